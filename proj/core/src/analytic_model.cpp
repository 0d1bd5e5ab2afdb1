#include <algorithm>
#include <stdexcept>

#include "gss/estimation.hpp"

namespace gss {

namespace {

// expand a sector-restricted block back into the full basis
Mat embed_block(const Mat& block, const std::vector<int>& idx, int n) {
  Mat full = Mat::Zero(n, n);
  for (size_t r = 0; r < idx.size(); ++r)
    for (size_t c = 0; c < idx.size(); ++c)
      full(idx[r], idx[c]) = block(static_cast<int>(r), static_cast<int>(c));
  return full;
}

}  // namespace

std::vector<double> analytic_sequence_function(const GateSet& gs, const ProbeConfig& probe,
                                               const NoisyGateSet& ng, const Measurement& meas,
                                               const std::vector<int>& ms,
                                               int interleaved_target) {
  if (!ng.uniform)
    throw std::invalid_argument(
        "analytic_sequence_function: gate-dependent noise is not supported; use the Monte-Carlo "
        "path");
  const int n = gs.basis_size();
  const Mat& lambda = ng.uniform_noise;
  const Vec rho_t = ng.prep_noise * meas.rho;

  std::vector<double> out;
  out.reserve(ms.size());

  if (probe.outcome_weights_mode) {
    // k(m) = sum_x w_x <<E_x~ | (R(Lambda) P_triv)^m | rho~>>
    const Mat ptriv = trivial_projector(gs);
    const Mat step = lambda * ptriv;
    for (int m : ms) {
      if (m < 1) throw std::invalid_argument("analytic_sequence_function: m >= 1 required");
      Mat pow_m = Mat::Identity(n, n);
      for (int j = 0; j < m; ++j) pow_m = step * pow_m;
      double k = 0.0;
      for (int x = 0; x < meas.outcomes(); ++x) {
        const Vec ext = ng.meas_noise.transpose() * meas.povm[static_cast<size_t>(x)];
        k += probe.outcome_weights(x) * ext.dot(pow_m * rho_t);
      }
      out.push_back(probe.c0 * k);
    }
    return out;
  }

  Mat lam_eff = lambda;
  if (interleaved_target >= 0) {
    // R(Lambda~) = R(U) R(Lambda_U) R(Lambda); uniform noise doubles as the
    // target-gate error channel
    const Mat& u = gs.elements.at(static_cast<size_t>(interleaved_target)).ptm;
    lam_eff = u * lambda * lambda;
  }

  const Mat ptriv = trivial_projector_product(gs, probe.sector);
  const Mat a_full = embed_block(probe.probe, probe.sector, n);
  Mat sandwich(n * n, n * n);
  {
    Mat kron(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) kron.block(n * i, n * j, n, n) = a_full(i, j) * lam_eff;
    sandwich = ptriv * kron * ptriv;
  }

  // Omega contraction: sum_x <<E_x (x) Lambda*(E_x~)| M |rho (x) rho~>>
  auto omega_trace = [&](const Mat& m_mat) {
    double tot = 0.0;
    Vec right(n * n);
    for (int i = 0; i < n; ++i) right.segment(n * i, n) = meas.rho(i) * rho_t;
    const Vec mr = m_mat * right;
    for (int x = 0; x < meas.outcomes(); ++x) {
      const Vec& ex = meas.povm[static_cast<size_t>(x)];
      const Vec ext = lambda.transpose() * (ng.meas_noise.transpose() * ex);
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += ex(i) * ext.dot(mr.segment(n * i, n));
      tot += v;
    }
    return tot;
  };

  // T^(m-1) P_triv accumulated incrementally over the requested lengths
  std::vector<std::pair<int, size_t>> order;
  for (size_t i = 0; i < ms.size(); ++i) {
    if (ms[i] < 1) throw std::invalid_argument("analytic_sequence_function: m >= 1 required");
    order.emplace_back(ms[i], i);
  }
  std::sort(order.begin(), order.end());
  out.assign(ms.size(), 0.0);
  Mat power = ptriv;  // T^0 := P_triv
  int cur = 1;
  for (const auto& [m, idx] : order) {
    for (; cur < m; ++cur) power = sandwich * power;
    out[idx] = probe.c0 * omega_trace(power);
  }
  return out;
}

}  // namespace gss
