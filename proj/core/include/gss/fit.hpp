#pragma once

#include <vector>

#include "gss/pauli_basis.hpp"

namespace gss {

// Decay models:
//   single:    k(m) = c0 * lambda^(m-1)            params (c0, lambda)
//   offset:    k(m) = b0 + a0 * lambda^(m-1)       params (b0, a0, lambda)
//   offset_m:  k(m) = b0 + a0 * lambda^m           params (b0, a0, lambda)
// offset_m is the leakage-model exponent convention.
enum class DecayModelKind { single, offset, offset_m };

struct DecayFit {
  DecayModelKind kind = DecayModelKind::single;
  Vec params;
  Mat covariance;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  // set when the fitted lambda leaves [-1, 1] by more than its sigma
  bool degenerate_lambda = false;

  double lambda() const { return params(params.size() - 1); }
  double lambda_sigma() const {
    const int i = static_cast<int>(params.size()) - 1;
    return std::sqrt(std::max(0.0, covariance(i, i)));
  }
  double offset() const { return kind == DecayModelKind::single ? 0.0 : params(0); }
  double amplitude() const { return kind == DecayModelKind::single ? params(0) : params(1); }
  double predict(double m) const;
};

// Nonlinear least squares via Levenberg-Marquardt: monotone non-increasing
// cost, stop when the relative step drops below 1e-10 or after 200
// iterations. Initialization: log-linear regression on |k| (offset models:
// offset seeded from the large-m mean). Covariance = (J^T W J)^-1 scaled by
// the residual variance. Weights default to 1.
DecayFit fit_decay(const std::vector<double>& m, const std::vector<double>& k,
                   DecayModelKind kind, const std::vector<double>& weights = {});

// Same, but seeded from a previous fit (used by bootstrap refits).
DecayFit fit_decay_from(const std::vector<double>& m, const std::vector<double>& k,
                        DecayModelKind kind, const Vec& init,
                        const std::vector<double>& weights = {});

}  // namespace gss
