#include "gss/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gss {

namespace {

int n_params(DecayModelKind kind) { return kind == DecayModelKind::single ? 2 : 3; }

double model_value(DecayModelKind kind, const Vec& p, double m) {
  switch (kind) {
    case DecayModelKind::single:
      return p(0) * std::pow(p(1), m - 1.0);
    case DecayModelKind::offset:
      return p(0) + p(1) * std::pow(p(2), m - 1.0);
    case DecayModelKind::offset_m:
      return p(0) + p(1) * std::pow(p(2), m);
  }
  return 0.0;
}

void model_jacobian(DecayModelKind kind, const Vec& p, double m, Eigen::RowVectorXd& row) {
  switch (kind) {
    case DecayModelKind::single: {
      const double lp = std::pow(p(1), m - 1.0);
      row(0) = lp;
      row(1) = (m - 1.0) == 0.0 ? 0.0 : p(0) * (m - 1.0) * std::pow(p(1), m - 2.0);
      break;
    }
    case DecayModelKind::offset:
    case DecayModelKind::offset_m: {
      const double e = kind == DecayModelKind::offset ? m - 1.0 : m;
      row(0) = 1.0;
      row(1) = std::pow(p(2), e);
      row(2) = e == 0.0 ? 0.0 : p(1) * e * std::pow(p(2), e - 1.0);
      break;
    }
  }
}

// log-linear seed; ratio-based fallback covers negative or alternating data
Vec initial_guess(DecayModelKind kind, const std::vector<double>& m,
                  const std::vector<double>& k) {
  const size_t n = m.size();
  double offset = 0.0;
  if (kind != DecayModelKind::single) {
    // large-m tail average
    double max_m = m[0];
    for (double mi : m) max_m = std::max(max_m, mi);
    double tail = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < n; ++i)
      if (m[i] >= max_m - 1e-9) {
        tail += k[i];
        ++cnt;
      }
    offset = tail / cnt;
  }
  // try log-linear regression on |k - offset|
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (size_t i = 0; i < n; ++i) {
    const double y = std::abs(k[i] - offset);
    if (y < 1e-12) continue;
    const double ly = std::log(y);
    sx += m[i];
    sy += ly;
    sxx += m[i] * m[i];
    sxy += m[i] * ly;
    ++used;
  }
  double lambda = 0.9, amp = 1.0;
  if (used >= 2 && std::abs(used * sxx - sx * sx) > 1e-12) {
    const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
    const double icept = (sy - slope * sx) / used;
    lambda = std::exp(slope);
    if (!(lambda > 0.0) || lambda > 2.0) lambda = 0.9;
    amp = std::exp(icept + slope * (kind == DecayModelKind::offset_m ? 0.0 : 1.0));
  }
  // ratio fallback handles sign-alternating decays
  double num = 0, den = 0;
  for (size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(m[i + 1] - m[i] - 1.0) < 1e-9) {
      num += (k[i + 1] - offset) * (k[i] - offset);
      den += (k[i] - offset) * (k[i] - offset);
    }
  }
  if (den > 1e-12) {
    const double ratio = num / den;
    if (std::abs(ratio) <= 1.0 && (lambda <= 0.0 || std::abs(ratio) < 1.0)) {
      bool any_negative = false;
      for (double v : k)
        if (v - offset < 0) any_negative = true;
      if (any_negative || std::abs(ratio - lambda) > 0.5) {
        lambda = ratio;
        amp = k[0] - offset;
        if (kind == DecayModelKind::offset_m && std::abs(lambda) > 1e-12) amp /= lambda;
        if (kind != DecayModelKind::offset_m)
          amp = (k[0] - offset) / std::pow(std::abs(lambda) > 1e-12 ? lambda : 1.0, m[0] - 1.0);
      }
    }
  }
  if (kind == DecayModelKind::single) {
    Vec p(2);
    p << (k[0] != 0.0 && std::abs(amp) < 1e-12 ? k[0] : amp), lambda;
    return p;
  }
  Vec p(3);
  p << offset, amp, lambda;
  return p;
}

}  // namespace

double DecayFit::predict(double m) const { return model_value(kind, params, m); }

DecayFit fit_decay_from(const std::vector<double>& m, const std::vector<double>& k,
                        DecayModelKind kind, const Vec& init,
                        const std::vector<double>& weights) {
  const size_t n = m.size();
  const int np = n_params(kind);
  if (k.size() != n) throw std::invalid_argument("fit_decay: m/k size mismatch");
  const size_t min_pts = kind == DecayModelKind::single ? 3 : 4;
  if (n < min_pts)
    throw std::invalid_argument("fit_decay: needs at least " + std::to_string(min_pts) +
                                " distinct sequence lengths");
  std::vector<double> w = weights.empty() ? std::vector<double>(n, 1.0) : weights;
  if (w.size() != n) throw std::invalid_argument("fit_decay: weight size mismatch");

  Vec p = init;
  auto cost_of = [&](const Vec& q) {
    double c = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double r = model_value(kind, q, m[i]) - k[i];
      c += w[i] * r * r;
    }
    return c;
  };

  double cost = cost_of(p);
  double mu = 1e-3;
  DecayFit fit;
  fit.kind = kind;
  fit.converged = false;

  Eigen::MatrixXd jac(n, np);
  Vec resid(n);
  Eigen::RowVectorXd row(np);
  int iter = 0;
  for (; iter < 200; ++iter) {
    for (size_t i = 0; i < n; ++i) {
      model_jacobian(kind, p, m[i], row);
      const double sw = std::sqrt(w[i]);
      jac.row(static_cast<int>(i)) = sw * row;
      resid(static_cast<int>(i)) = sw * (model_value(kind, p, m[i]) - k[i]);
    }
    const Mat jtj = jac.transpose() * jac;
    const Vec g = jac.transpose() * resid;
    bool stepped = false;
    for (int tries = 0; tries < 50; ++tries) {
      Mat damped = jtj;
      for (int d = 0; d < np; ++d) damped(d, d) += mu * std::max(jtj(d, d), 1e-12);
      const Vec step = damped.ldlt().solve(-g);
      const Vec cand = p + step;
      const double cand_cost = cost_of(cand);
      if (cand_cost <= cost) {
        const double rel = step.norm() / std::max(p.norm(), 1e-12);
        p = cand;
        cost = cand_cost;
        mu = std::max(mu * 0.3, 1e-12);
        stepped = true;
        if (rel < 1e-10) fit.converged = true;
        break;
      }
      mu *= 3.0;
    }
    if (fit.converged || !stepped) {
      if (!stepped) fit.converged = true;  // no improving direction: at a minimum
      break;
    }
  }
  fit.iterations = iter + 1;
  fit.params = p;
  fit.residual_norm = std::sqrt(cost);

  // covariance from the Jacobian at the optimum, scaled by residual variance
  for (size_t i = 0; i < n; ++i) {
    model_jacobian(kind, p, m[i], row);
    jac.row(static_cast<int>(i)) = std::sqrt(w[i]) * row;
  }
  const Mat jtj = jac.transpose() * jac;
  const double dof = std::max(1.0, static_cast<double>(n) - np);
  const double s2 = cost / dof;
  Eigen::FullPivLU<Mat> lu(jtj);
  if (lu.isInvertible()) {
    fit.covariance = s2 * lu.inverse();
  } else {
    fit.covariance = Mat::Constant(np, np, std::numeric_limits<double>::quiet_NaN());
  }
  const double lam = fit.lambda();
  const double sig = fit.lambda_sigma();
  if (std::abs(lam) > 1.0 && std::abs(lam) - 1.0 > (std::isfinite(sig) ? sig : 0.0))
    fit.degenerate_lambda = true;
  return fit;
}

DecayFit fit_decay(const std::vector<double>& m, const std::vector<double>& k,
                   DecayModelKind kind, const std::vector<double>& weights) {
  if (m.size() < (kind == DecayModelKind::single ? size_t{3} : size_t{4}))
    throw std::invalid_argument("fit_decay: not enough sequence lengths");
  return fit_decay_from(m, k, kind, initial_guess(kind, m, k), weights);
}

}  // namespace gss
