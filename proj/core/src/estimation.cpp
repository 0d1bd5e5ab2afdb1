#include "gss/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gss/parallel.hpp"

namespace gss {

namespace {

Mat restrict_block(const Mat& full, const std::vector<int>& idx) {
  Mat b(idx.size(), idx.size());
  for (size_t r = 0; r < idx.size(); ++r)
    for (size_t c = 0; c < idx.size(); ++c)
      b(static_cast<int>(r), static_cast<int>(c)) =
          full(idx[r], idx[c]);
  return b;
}

Vec restrict_vec(const Vec& full, const std::vector<int>& idx) {
  Vec v(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) v(static_cast<int>(i)) = full(idx[i]);
  return v;
}

std::vector<int> sector_indices(const GateSet& gs, const std::string& label) {
  const IrrepSector& s = gs.sector(label);
  // the filtering block spans all copies of the sector
  std::vector<int> idx;
  for (int k = 0; k < s.multiplicity(); ++k) {
    auto ax = s.basis_indices(k);
    if (!ax) throw std::invalid_argument("sector '" + label + "' is not basis-aligned");
    idx.insert(idx.end(), ax->begin(), ax->end());
  }
  std::sort(idx.begin(), idx.end());
  return idx;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double normalization_constant(const GateSet& gs, const std::vector<int>& sector,
                              const Mat& probe_block, const Measurement& meas) {
  ProbeConfig p;
  p.name = "norm";
  p.sector = sector;
  p.probe = probe_block;
  p.c0 = 1.0;
  NoisyGateSet ideal = assign_noise(gs, NoiseSpec::none_spec());
  const double k1 = analytic_sequence_function(gs, p, ideal, meas, {1})[0];
  if (std::abs(k1) < 1e-12)
    throw std::runtime_error("normalization_constant: probe has no overlap with the measurement");
  return 1.0 / k1;
}

ProbeConfig sector_probe(const GateSet& gs, const std::string& sector_label,
                         const Measurement& meas) {
  ProbeConfig p;
  p.name = sector_label;
  p.sector = sector_indices(gs, sector_label);
  // C1xI filters a single irrep copy; its catalog block is copy 0.
  if (gs.name == "c1xi" && sector_label == "p1") {
    auto ax = gs.sector(sector_label).basis_indices(0);
    p.sector = *ax;
  }
  p.probe = Mat::Identity(static_cast<int>(p.sector.size()), static_cast<int>(p.sector.size()));
  p.c0 = normalization_constant(gs, p.sector, p.probe, meas);
  return p;
}

ProbeConfig interleaved_probe(const GateSet& gs, const std::string& sector_label,
                              int target_element, const Measurement& meas) {
  ProbeConfig p;
  p.name = sector_label + "_int";
  p.sector = sector_indices(gs, sector_label);
  const Mat& u = gs.elements.at(static_cast<size_t>(target_element)).ptm;
  p.probe = restrict_block(u, p.sector).transpose();
  // normalized like the plain sector probe so that both pipelines share c0
  p.c0 = normalization_constant(gs, p.sector,
                                Mat::Identity(static_cast<int>(p.sector.size()),
                                              static_cast<int>(p.sector.size())),
                                meas);
  return p;
}

ProbeConfig element_probe(const GateSet& gs, const std::string& sector_label, int element) {
  ProbeConfig p;
  p.name = sector_label + "_el" + std::to_string(element);
  p.sector = sector_indices(gs, sector_label);
  p.probe = restrict_block(gs.elements.at(static_cast<size_t>(element)).ptm, p.sector);
  p.c0 = 1.0;  // decay rate is normalization-independent
  return p;
}

ProbeConfig leakage_probe(const std::string& which) {
  ProbeConfig p;
  p.name = which;
  p.sector = {0, 6};
  p.outcome_weights_mode = true;
  p.outcome_weights = Vec(2);
  if (which == "p0") {
    p.probe = Mat::Identity(2, 2);
    p.outcome_weights << 1.0, 0.0;
  } else if (which == "p0_2") {
    p.probe = Mat::Zero(2, 2);
    p.probe(1, 1) = 1.0;
    p.outcome_weights << 1.0, -1.0;
  } else {
    throw std::invalid_argument("leakage_probe: expected 'p0' or 'p0_2'");
  }
  p.c0 = 1.0;
  return p;
}

CorrelationEvaluator::CorrelationEvaluator(const GateSet& gs, const ProbeConfig& probe,
                                           const Measurement& meas)
    : probe_(probe) {
  if (!probe.outcome_weights_mode) {
    blocks_.reserve(gs.elements.size());
    for (const auto& el : gs.elements) blocks_.push_back(restrict_block(el.ptm, probe.sector));
    for (const Vec& e : meas.povm) povm_restricted_.push_back(restrict_vec(e, probe.sector));
    rho_restricted_ = restrict_vec(meas.rho, probe.sector);
  }
}

double CorrelationEvaluator::f(const Record& rec) const {
  if (probe_.outcome_weights_mode) return probe_.outcome_weights(rec.outcome);
  Vec v = rho_restricted_;
  for (size_t j = 0; j < rec.seq.size(); ++j) {
    if (j > 0) v = probe_.probe * v;
    v = blocks_[static_cast<size_t>(rec.seq[j])] * v;
  }
  return probe_.c0 * povm_restricted_[static_cast<size_t>(rec.outcome)].dot(v);
}

SequenceFunctionEstimate estimate_sequence_function(const ShadowDataset& ds, const GateSet& gs,
                                                    const ProbeConfig& probe,
                                                    const Measurement& meas, EstimatorKind est,
                                                    int groups) {
  if (ds.records.empty()) throw std::invalid_argument("estimate_sequence_function: empty dataset");
  CorrelationEvaluator eval(gs, probe, meas);

  std::vector<double> fvals(ds.records.size());
  parallel_for(ds.records.size(), [&](size_t i) { fvals[i] = eval.f(ds.records[i]); });

  std::map<int, std::vector<double>> by_m;
  for (size_t i = 0; i < ds.records.size(); ++i) by_m[ds.records[i].m].push_back(fvals[i]);

  SequenceFunctionEstimate out;
  out.estimator = est;
  for (auto& [m, vals] : by_m) {
    const int K = static_cast<int>(vals.size());
    double khat = 0.0;
    if (est == EstimatorKind::mean) {
      khat = pairwise_sum(vals) / K;
    } else {
      int G = groups > 0 ? groups : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(K))));
      if (K < G)
        throw std::invalid_argument("median-of-means: K = " + std::to_string(K) +
                                    " < groups = " + std::to_string(G));
      std::vector<double> means;
      const int base = K / G, extra = K % G;
      size_t pos = 0;
      for (int g = 0; g < G; ++g) {
        const int len = base + (g < extra ? 1 : 0);
        means.push_back(pairwise_sum(vals.data() + pos, static_cast<size_t>(len)) / len);
        pos += static_cast<size_t>(len);
      }
      khat = median(means);
      out.groups = G;
    }
    double var = 0.0;
    for (double v : vals) var += (v - khat) * (v - khat);
    var /= std::max(1, K - 1);
    out.m.push_back(m);
    out.k.push_back(khat);
    out.std_err.push_back(std::sqrt(var / K));
    out.count.push_back(K);
  }
  return out;
}

double fidelity_from_decays(const std::vector<int>& sector_dims, const std::vector<double>& lambdas,
                            int d) {
  if (sector_dims.size() != lambdas.size())
    throw std::invalid_argument("fidelity_from_decays: dims/lambdas mismatch");
  double tr = 1.0;
  for (size_t i = 0; i < lambdas.size(); ++i) tr += sector_dims[i] * lambdas[i];
  return (tr + d) / (d * (d + 1.0));
}

double fidelity_single_qubit_sector(double lambda1, int d1) {
  return lambda1 + (1.0 - lambda1) / d1;
}

InterleavedEstimate interleaved_estimate(double f_sta, double f_int, int d) {
  InterleavedEstimate out;
  const double denom = d * f_sta - 1.0;
  if (denom <= 0.0) throw std::invalid_argument("interleaved_estimate: d F_sta - 1 <= 0");
  if (d * f_int - 1.0 <= 0.0)
    throw std::invalid_argument("interleaved_estimate: d F_int - 1 <= 0, estimate undefined");
  out.point = 1.0 - (d - 1.0) / d * (1.0 - (d * f_int - 1.0) / denom);

  // chi00 inequality: |c - ub - (1-u)(1-b)| <= 2 sqrt(u b (1-u)(1-b)) with
  // b = chi(F_sta), c = chi(F_int); boundary quadratic in u = chi(F_target):
  // u^2 + u (2As - 4b(1-b)) + A^2 = 0, A = c - 1 + b, s = 1 - 2b.
  const double b = ((d + 1.0) * f_sta - 1.0) / d;
  const double c = ((d + 1.0) * f_int - 1.0) / d;
  const double a = c - 1.0 + b;
  const double s = 1.0 - 2.0 * b;
  const double mid = 2.0 * b * (1.0 - b) - a * s;
  const double disc = (a * s - 2.0 * b * (1.0 - b)) * (a * s - 2.0 * b * (1.0 - b)) - a * a;
  if (disc < 0.0) {
    out.degenerate = true;
    out.lower = 0.0;
    out.upper = 1.0;
    return out;
  }
  const double u_lo = mid - std::sqrt(disc);
  const double u_hi = mid + std::sqrt(disc);
  out.lower = std::max(0.0, (d * u_lo + 1.0) / (d + 1.0));
  out.upper = std::min(1.0, (d * u_hi + 1.0) / (d + 1.0));
  return out;
}

std::pair<double, double> crosstalk_scalars(double lambda1, double lambda_1g2, double lambda_2g1,
                                            double lambda_12, int d1) {
  const double dr = std::abs(lambda1 - lambda_1g2) * (d1 - 1.0) / d1;
  const double dl = lambda_12 - lambda_1g2 * lambda_2g1;
  return {dr, dl};
}

LeakageRates leakage_rates(const DecayFit& fit, const std::string& probe_name) {
  if (fit.kind != DecayModelKind::offset_m)
    throw std::invalid_argument("leakage_rates: fit must use the offset_m model");
  const double lam = fit.lambda();
  if (lam > 1.0 + 1e-12)
    throw std::invalid_argument("leakage_rates: lambda > 1, no decay to invert");
  // lambda = 1 - L - S, so lambda = 1 forces both rates to zero
  const double b0 = fit.params(0);
  LeakageRates out;
  double L, S;
  if (probe_name == "p0") {
    // b0 = S/(S+L), S+L = 1-lambda
    S = b0 * (1.0 - lam);
    L = (1.0 - b0) * (1.0 - lam);
  } else if (probe_name == "p0_2") {
    // b0 = (S-L)/(S+L)
    L = 0.5 * (1.0 - b0) * (1.0 - lam);
    S = 0.5 * (1.0 + b0) * (1.0 - lam);
  } else {
    throw std::invalid_argument("leakage_rates: unknown probe '" + probe_name + "'");
  }
  auto clip = [&out](double v) {
    if (v < 0.0) {
      out.clip_distance = std::max(out.clip_distance, -v);
      return 0.0;
    }
    if (v > 1.0) {
      out.clip_distance = std::max(out.clip_distance, v - 1.0);
      return 1.0;
    }
    return v;
  };
  out.leakage = clip(L);
  out.seepage = clip(S);
  // delta method: L = h(b0, lambda); var from the fit covariance over (b0, lambda)
  if (fit.covariance.allFinite()) {
    const double dLdb = (probe_name == "p0" ? -(1.0 - lam) : -0.5 * (1.0 - lam));
    const double dLdl = (probe_name == "p0" ? -(1.0 - b0) : -0.5 * (1.0 - b0));
    const double var = dLdb * dLdb * fit.covariance(0, 0) + dLdl * dLdl * fit.covariance(2, 2) +
                       2.0 * dLdb * dLdl * fit.covariance(0, 2);
    out.leakage_sigma = std::sqrt(std::max(0.0, var));
  }
  return out;
}

std::pair<double, double> leakage_of_channel(const Mat& noise) {
  Vec one1 = Vec::Zero(16), one2 = Vec::Zero(16);
  one1(0) = 1.0;
  one1(6) = 1.0;
  one2(0) = 1.0;
  one2(6) = -1.0;
  const double L = 0.5 * one2.dot(noise * one1);
  const double S = 0.5 * one1.dot(noise * one2);
  return {L, S};
}

}  // namespace gss
