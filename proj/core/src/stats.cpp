#include "gss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gss/parallel.hpp"
#include "gss/rng.hpp"

namespace gss {

namespace {

double quantile_type7(const std::vector<double>& sorted, double q) {
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * (static_cast<double>(n) - 1.0);
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

struct GroupedF {
  std::vector<double> m;               // distinct lengths, sorted
  std::vector<std::vector<double>> f;  // f values per length, dataset order
};

GroupedF group_f_values(const ShadowDataset& ds, const GateSet& gs, const ProbeConfig& probe,
                        const Measurement& meas) {
  CorrelationEvaluator eval(gs, probe, meas);
  std::vector<double> fvals(ds.records.size());
  parallel_for(ds.records.size(), [&](size_t i) { fvals[i] = eval.f(ds.records[i]); });
  std::map<int, std::vector<double>> by_m;
  for (size_t i = 0; i < ds.records.size(); ++i) by_m[ds.records[i].m].push_back(fvals[i]);
  GroupedF out;
  for (auto& [m, v] : by_m) {
    out.m.push_back(m);
    out.f.push_back(std::move(v));
  }
  return out;
}

double estimate_k(const std::vector<double>& vals, EstimatorKind est, int groups) {
  const int K = static_cast<int>(vals.size());
  if (est == EstimatorKind::mean) return pairwise_sum(vals) / K;
  int G = groups > 0 ? groups : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(K))));
  G = std::min(G, K);
  std::vector<double> means;
  const int base = K / G, extra = K % G;
  size_t pos = 0;
  for (int g = 0; g < G; ++g) {
    const int len = base + (g < extra ? 1 : 0);
    means.push_back(pairwise_sum(vals.data() + pos, static_cast<size_t>(len)) / len);
    pos += static_cast<size_t>(len);
  }
  std::sort(means.begin(), means.end());
  const size_t n = means.size();
  return n % 2 == 1 ? means[n / 2] : 0.5 * (means[n / 2 - 1] + means[n / 2]);
}

double fit_lambda(const GroupedF& g, EstimatorKind est, int groups, DecayModelKind model,
                  const Vec* init, bool* ok) {
  std::vector<double> k(g.m.size());
  for (size_t i = 0; i < g.m.size(); ++i) k[i] = estimate_k(g.f[i], est, groups);
  *ok = true;
  try {
    const DecayFit fit = init ? fit_decay_from(g.m, k, model, *init) : fit_decay(g.m, k, model);
    if (!fit.converged || !std::isfinite(fit.lambda())) *ok = false;
    return fit.lambda();
  } catch (const std::exception&) {
    *ok = false;
    return 0.0;
  }
}

}  // namespace

std::string ci_method_name(CiMethod m) {
  switch (m) {
    case CiMethod::percentile: return "percentile";
    case CiMethod::bca: return "bca";
    case CiMethod::normal: return "normal";
    case CiMethod::fit_cov_2sigma: return "fit_cov_2sigma";
  }
  return "?";
}

CiMethod ci_method_by_name(const std::string& name) {
  if (name == "percentile") return CiMethod::percentile;
  if (name == "bca") return CiMethod::bca;
  if (name == "normal") return CiMethod::normal;
  if (name == "fit_cov_2sigma") return CiMethod::fit_cov_2sigma;
  throw std::invalid_argument("unknown CI method '" + name + "'");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("normal_quantile: p outside (0,1)");
  // Acklam's rational approximation
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  // one Newton step on the CDF
  const double e = normal_cdf(x) - p;
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  return x - e / pdf;
}

static BootstrapResult bootstrap_impl(const GroupedF& grouped, const DecayFit& base_fit,
                                      const BootstrapOptions& opts) {
  BootstrapResult out;
  out.lambda_hat = base_fit.lambda();
  out.fit_sigma = base_fit.lambda_sigma();

  const int B = opts.replicates;
  std::vector<double> reps(static_cast<size_t>(B));
  std::vector<char> rep_ok(static_cast<size_t>(B));
  parallel_for(static_cast<size_t>(B), [&](size_t bi) {
    Rng rng = Rng::stream(opts.seed, bi);
    GroupedF resampled;
    resampled.m = grouped.m;
    resampled.f.resize(grouped.f.size());
    for (size_t mi = 0; mi < grouped.f.size(); ++mi) {
      const auto& src = grouped.f[mi];
      auto& dst = resampled.f[mi];
      dst.resize(src.size());
      for (size_t j = 0; j < src.size(); ++j)
        dst[j] = src[rng.bounded(static_cast<uint64_t>(src.size()))];
    }
    bool ok;
    reps[bi] = fit_lambda(resampled, opts.estimator, opts.mom_groups, opts.model,
                          &base_fit.params, &ok);
    rep_ok[bi] = ok ? 1 : 0;
  });
  int fails = 0;
  for (int bi = 0; bi < B; ++bi) {
    if (rep_ok[static_cast<size_t>(bi)])
      out.lambdas.push_back(reps[static_cast<size_t>(bi)]);
    else
      ++fails;
  }
  out.failure_fraction = static_cast<double>(fails) / B;
  if (out.lambdas.empty()) throw std::runtime_error("bootstrap: every replicate fit failed");

  // BCa ingredients
  int below = 0;
  for (double l : out.lambdas)
    if (l < out.lambda_hat) ++below;
  double frac = static_cast<double>(below) / static_cast<double>(out.lambdas.size());
  frac = std::min(std::max(frac, 0.5 / out.lambdas.size()), 1.0 - 0.5 / out.lambdas.size());
  out.z0 = normal_quantile(frac);
  // exact-symmetry guard: with half the replicates below, z0 is zero
  if (below * 2 == static_cast<int>(out.lambdas.size())) out.z0 = 0.0;

  // record-level jackknife across all lengths jointly
  size_t total_records = 0;
  for (const auto& v : grouped.f) total_records += v.size();
  std::vector<double> jack(total_records);
  std::vector<char> jack_ok(total_records);
  parallel_for(total_records, [&](size_t drop) {
    GroupedF reduced;
    reduced.m = grouped.m;
    reduced.f.resize(grouped.f.size());
    size_t offset = 0;
    for (size_t mi = 0; mi < grouped.f.size(); ++mi) {
      const auto& src = grouped.f[mi];
      auto& dst = reduced.f[mi];
      if (drop >= offset && drop < offset + src.size()) {
        dst.reserve(src.size() - 1);
        for (size_t j = 0; j < src.size(); ++j)
          if (offset + j != drop) dst.push_back(src[j]);
      } else {
        dst = src;
      }
      offset += src.size();
    }
    bool ok;
    jack[drop] = fit_lambda(reduced, opts.estimator, opts.mom_groups, opts.model,
                            &base_fit.params, &ok);
    jack_ok[drop] = ok ? 1 : 0;
  });
  std::vector<double> jk;
  for (size_t i = 0; i < total_records; ++i)
    if (jack_ok[i]) jk.push_back(jack[i]);
  if (jk.size() >= 3) {
    double mean = 0.0;
    for (double v : jk) mean += v;
    mean /= static_cast<double>(jk.size());
    double s2 = 0.0, s3 = 0.0;
    for (double v : jk) {
      const double d = mean - v;
      s2 += d * d;
      s3 += d * d * d;
    }
    out.accel = s2 > 1e-300 ? s3 / (6.0 * std::pow(s2, 1.5)) : 0.0;
  }
  return out;
}

BootstrapResult bootstrap_lambdas(const ShadowDataset& ds, const GateSet& gs,
                                  const ProbeConfig& probe, const Measurement& meas,
                                  const BootstrapOptions& opts) {
  if (opts.replicates < 200)
    throw std::invalid_argument("bootstrap: needs at least 200 replicates");
  const GroupedF grouped = group_f_values(ds, gs, probe, meas);
  std::vector<double> k(grouped.m.size());
  for (size_t i = 0; i < grouped.m.size(); ++i)
    k[i] = estimate_k(grouped.f[i], opts.estimator, opts.mom_groups);
  const DecayFit base_fit = fit_decay(grouped.m, k, opts.model);
  return bootstrap_impl(grouped, base_fit, opts);
}

ConfidenceInterval confidence_interval(const BootstrapResult& b, CiMethod method, double level) {
  ConfidenceInterval ci;
  ci.method = method;
  ci.level = level;
  ci.point = b.lambda_hat;
  ci.reliable = b.failure_fraction <= 0.05;
  const double alpha = 1.0 - level;

  std::vector<double> sorted = b.lambdas;
  std::sort(sorted.begin(), sorted.end());
  const bool degenerate = sorted.back() - sorted.front() < 1e-15;

  switch (method) {
    case CiMethod::percentile: {
      if (degenerate) {
        ci.lower = ci.upper = b.lambda_hat;
        break;
      }
      ci.lower = quantile_type7(sorted, alpha / 2.0);
      ci.upper = quantile_type7(sorted, 1.0 - alpha / 2.0);
      break;
    }
    case CiMethod::bca: {
      if (degenerate) {
        ci.lower = ci.upper = b.lambda_hat;
        break;
      }
      if (b.z0 == 0.0 && b.accel == 0.0) {
        // reduces to the percentile method identically
        ci.lower = quantile_type7(sorted, alpha / 2.0);
        ci.upper = quantile_type7(sorted, 1.0 - alpha / 2.0);
        break;
      }
      const double zlo = normal_quantile(alpha / 2.0);
      const double zhi = normal_quantile(1.0 - alpha / 2.0);
      auto adjust = [&](double z) {
        const double t = b.z0 + (b.z0 + z) / (1.0 - b.accel * (b.z0 + z));
        return normal_cdf(t);
      };
      ci.lower = quantile_type7(sorted, adjust(zlo));
      ci.upper = quantile_type7(sorted, adjust(zhi));
      break;
    }
    case CiMethod::normal: {
      double mean = 0.0;
      for (double v : sorted) mean += v;
      mean /= static_cast<double>(sorted.size());
      double var = 0.0;
      for (double v : sorted) var += (v - mean) * (v - mean);
      var /= std::max<size_t>(1, sorted.size() - 1);
      const double z = normal_quantile(1.0 - alpha / 2.0);
      ci.lower = b.lambda_hat - z * std::sqrt(var);
      ci.upper = b.lambda_hat + z * std::sqrt(var);
      break;
    }
    case CiMethod::fit_cov_2sigma: {
      ci.lower = b.lambda_hat - 2.0 * b.fit_sigma;
      ci.upper = b.lambda_hat + 2.0 * b.fit_sigma;
      break;
    }
  }
  return ci;
}

std::vector<ConfidenceInterval> bootstrap_ci(const ShadowDataset& ds, const GateSet& gs,
                                             const ProbeConfig& probe, const Measurement& meas,
                                             const BootstrapOptions& opts,
                                             const std::vector<CiMethod>& methods) {
  const BootstrapResult b = bootstrap_lambdas(ds, gs, probe, meas, opts);
  std::vector<ConfidenceInterval> out;
  for (CiMethod m : methods) out.push_back(confidence_interval(b, m, opts.level));
  return out;
}

double coverage_ground_truth(const CoverageConfig& cfg) {
  const GateSet& gs = gate_set_by_name(cfg.gate_set);
  const Mat lambda = build_channel(cfg.noise);
  const IrrepSector& s = gs.sector(cfg.sector);
  return (s.projector() * lambda).trace() / s.dim();
}

std::vector<CoverageCell> coverage_study(const CoverageConfig& cfg) {
  const GateSet& gs = gate_set_by_name(cfg.gate_set);
  const Measurement& meas = measurement_by_name(cfg.measurement);
  const NoisyGateSet ng = assign_noise(gs, cfg.noise);
  const ProbeConfig probe = sector_probe(gs, cfg.sector, meas);
  const double truth = coverage_ground_truth(cfg);

  std::vector<CoverageCell> cells;
  for (int K : cfg.sample_sizes) {
    for (EstimatorKind est : cfg.estimators) {
      std::map<CiMethod, int> hits;
      for (int t = 0; t < cfg.trials; ++t) {
        SequencePlan plan;
        plan.lengths = cfg.lengths;
        plan.reps_per_length = K;
        plan.seed = fnv1a(&t, sizeof(t), cfg.master_seed ^ (static_cast<uint64_t>(K) << 32) ^
                                             (est == EstimatorKind::mean ? 0x11ull : 0x22ull));
        const ShadowDataset ds = run_experiment(plan, ng, meas);
        BootstrapOptions opts;
        opts.replicates = cfg.bootstrap_replicates;
        opts.level = cfg.level;
        opts.seed = plan.seed ^ 0xb00757ull;
        opts.estimator = est;
        const BootstrapResult b = bootstrap_lambdas(ds, gs, probe, meas, opts);
        for (CiMethod m : cfg.methods) {
          const ConfidenceInterval ci = confidence_interval(b, m, cfg.level);
          if (ci.lower <= truth && truth <= ci.upper) ++hits[m];
        }
      }
      for (CiMethod m : cfg.methods) {
        CoverageCell cell;
        cell.sample_size = K;
        cell.estimator = est;
        cell.method = m;
        cell.trials = cfg.trials;
        cell.coverage = static_cast<double>(hits[m]) / cfg.trials;
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

}  // namespace gss
