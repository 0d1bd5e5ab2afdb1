#include "gss/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gss {

namespace {

constexpr double kC1 = 6.0 / 5.0;
constexpr double kC2 = 4.0 / 5.0;
constexpr double kEpsThreshold = 0.1;

const std::vector<int>& sector_taus(int sector) {
  static const std::vector<int> s1{4, 5, 6};
  static const std::vector<int> s2{1, 2, 3};
  static const std::vector<int> s3{7, 8, 9, 10, 11, 12, 13, 14, 15};
  switch (sector) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
  }
  throw std::invalid_argument("marginal sector must be 1, 2 or 3");
}

Mat block_of(const Mat& full, const std::vector<int>& idx) {
  Mat b(idx.size(), idx.size());
  for (size_t r = 0; r < idx.size(); ++r)
    for (size_t c = 0; c < idx.size(); ++c)
      b(static_cast<int>(r), static_cast<int>(c)) = full(idx[r], idx[c]);
  return b;
}

bool identity_on(const Mat& ptm, const std::vector<int>& idx) {
  for (int r : idx)
    for (int c : idx)
      if (std::abs(ptm(r, c) - (r == c ? 1.0 : 0.0)) > 1e-9) return false;
  return true;
}

}  // namespace

Mat MarginalSet::full() const {
  Mat f = Mat::Zero(16, 16);
  f(0, 0) = 1.0;
  const auto put = [&f](const Mat& b, const std::vector<int>& idx) {
    for (size_t r = 0; r < idx.size(); ++r)
      for (size_t c = 0; c < idx.size(); ++c)
        f(idx[r], idx[c]) = b(static_cast<int>(r), static_cast<int>(c));
  };
  put(block1, sector_taus(1));
  put(block2, sector_taus(2));
  put(block3, sector_taus(3));
  return f;
}

std::vector<int> marginal_probe_elements(const GateSet& c1xc1, int sector) {
  std::vector<int> out;
  for (int i = 0; i < c1xc1.order(); ++i) {
    const Mat& r = c1xc1.elements[static_cast<size_t>(i)].ptm;
    bool keep = false;
    switch (sector) {
      case 1: keep = identity_on(r, sector_taus(2)); break;  // C x 1 fixes qubit 2
      case 2: keep = identity_on(r, sector_taus(1)); break;
      case 3: keep = true; break;
      default: throw std::invalid_argument("marginal sector must be 1, 2 or 3");
    }
    if (keep) out.push_back(i);
  }
  return out;
}

Mat reconstruct_marginal(const GateSet& c1xc1, int sector, const std::vector<double>& decays) {
  const auto elements = marginal_probe_elements(c1xc1, sector);
  if (decays.size() != elements.size())
    throw std::invalid_argument("reconstruct_marginal: expected " +
                                std::to_string(elements.size()) + " decays, got " +
                                std::to_string(decays.size()));
  const auto& taus = sector_taus(sector);
  const double dim = static_cast<double>(taus.size());
  Mat acc = Mat::Zero(taus.size(), taus.size());
  for (size_t i = 0; i < elements.size(); ++i)
    acc += decays[i] * block_of(c1xc1.elements[static_cast<size_t>(elements[i])].ptm, taus);
  return (dim * dim / static_cast<double>(elements.size())) * acc;
}

CrosstalkMatrices crosstalk_matrices(const MarginalSet& ms) {
  CrosstalkMatrices out;
  Mat kron(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) kron.block(3 * i, 3 * j, 3, 3) = ms.block1(i, j) * ms.block2;
  out.delta_r1 = (ms.block3 - kron).cwiseAbs();
  Eigen::JacobiSVD<Mat> svd(kron);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  out.condition_number = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (smin > 1e-12) {
    out.delta_r2 = (kron.inverse() * ms.block3).cwiseAbs();
    out.r2_valid = true;
  } else {
    out.delta_r2 = Mat::Zero(9, 9);
    out.r2_valid = false;
  }
  return out;
}

int pauli_anticommutation(int a, int b) {
  const auto [a1, a2] = tau_factors(a);
  const auto [b1, b2] = tau_factors(b);
  const auto anti1 = [](int p, int q) { return (p != 0 && q != 0 && p != q) ? 1 : 0; };
  return (anti1(a1, b1) + anti1(a2, b2)) % 2;
}

Mat pauli_twirl(const Mat& ptm) {
  if (ptm.rows() != 16) throw std::invalid_argument("pauli_twirl: 16x16 input expected");
  Mat out = Mat::Zero(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      double s = 0.0;
      for (int p = 0; p < 16; ++p)
        s += ((pauli_anticommutation(i, p) + pauli_anticommutation(j, p)) % 2 == 0 ? 1.0 : -1.0) *
             ptm(i, j);
      out(i, j) = s / 16.0;
    }
  return out;
}

Vec project_to_simplex(const Vec& y) {
  const int n = static_cast<int>(y.size());
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double tau = 0.0;
  double cum = 0.0;
  for (int i = 0; i < n; ++i) {
    cum += u[static_cast<size_t>(i)];
    const double t = (cum - 1.0) / (i + 1);
    if (u[static_cast<size_t>(i)] - t > 0.0) tau = t;
  }
  Vec p(n);
  for (int i = 0; i < n; ++i) p(i) = std::max(0.0, y(i) - tau);
  return p;
}

Vec pauli_error_rates(const MarginalSet& ms, double* negativity) {
  const Mat twirled = pauli_twirl(ms.full());
  Vec raw(16);
  for (int a = 0; a < 16; ++a) {
    double s = 0.0;
    for (int b = 0; b < 16; ++b)
      s += (pauli_anticommutation(a, b) == 0 ? 1.0 : -1.0) * twirled(b, b);
    raw(a) = s / 16.0;
  }
  if (negativity) {
    double neg = 0.0;
    for (int a = 0; a < 16; ++a) neg = std::max(neg, -raw(a));
    *negativity = neg;
  }
  return project_to_simplex(raw);
}

std::array<double, 3> epsilon_forward(double e1, double e2, double e3) {
  return {(1.0 - e1) * (1.0 - kC1 * e3), (1.0 - e2) * (1.0 - kC1 * e3),
          (1.0 - e1) * (1.0 - e2) * (1.0 - kC2 * e3)};
}

EpsilonAmplitudes epsilon_amplitudes(double lambda_1g2, double lambda_2g1, double lambda_12) {
  EpsilonAmplitudes out;
  const double denom = lambda_1g2 * lambda_2g1;
  if (std::abs(denom) < 1e-12) {
    out.solved = false;
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  // r (1 - c1 e3)^2 = 1 - c2 e3 with r = lambda12 / (lambda_1|2 lambda_2|1)
  const double r = lambda_12 / denom;
  const double qa = r * kC1 * kC1;
  const double qb = -(2.0 * r * kC1 - kC2);
  const double qc = r - 1.0;
  double e3;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) {
    out.solved = false;
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  const double root1 = (-qb - std::sqrt(disc)) / (2.0 * qa);
  const double root2 = (-qb + std::sqrt(disc)) / (2.0 * qa);
  // the physical branch is the one continuous with e3 = 0 at r = 1
  e3 = std::abs(root1) <= std::abs(root2) ? root1 : root2;

  double e2 = 1.0 - lambda_2g1 / (1.0 - kC1 * e3);
  double e1 = 1.0 - lambda_1g2 / (1.0 - kC1 * e3);

  // threshold rule, applied in the order e2, e1, e3
  auto threshold = [&out](double& e, int slot) {
    if (e < 0.0 && std::abs(e) < kEpsThreshold) {
      e = 0.0;
      out.thresholded[static_cast<size_t>(slot)] = true;
    }
  };
  threshold(e2, 1);
  threshold(e1, 0);
  threshold(e3, 2);

  out.eps1 = e1;
  out.eps2 = e2;
  out.eps3 = e3;
  out.solved = e1 >= 0.0 && e1 <= 1.0 && e2 >= 0.0 && e2 <= 1.0 && e3 >= 0.0 && e3 <= 1.0;
  const auto fwd = epsilon_forward(e1, e2, e3);
  out.residual = std::max({std::abs(fwd[0] - lambda_1g2), std::abs(fwd[1] - lambda_2g1),
                           std::abs(fwd[2] - lambda_12)});
  return out;
}

}  // namespace gss
