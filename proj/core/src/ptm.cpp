#include "gss/ptm.hpp"

#include <sstream>
#include <stdexcept>

namespace gss {

namespace {

// Real part of Tr(tau_i^dag A tau_j B) for all i, j; imaginary residue above
// 1e-10 is an internal error (PTMs of CP maps are exactly real).
Mat ptm_entries(const std::vector<std::pair<CMat, CMat>>& terms,
                const PauliBasis& basis) {
  const int n = basis.size();
  Mat out = Mat::Zero(n, n);
  for (const auto& [a, b] : terms) {
    for (int j = 0; j < n; ++j) {
      const CMat col = a * basis.element(j) * b;
      for (int i = 0; i < n; ++i) {
        const std::complex<double> v = (basis.element(i).adjoint() * col).trace();
        if (std::abs(v.imag()) > 1e-10)
          throw std::runtime_error("ptm: imaginary entry residue exceeds 1e-10");
        out(i, j) += v.real();
      }
    }
  }
  return out;
}

}  // namespace

Ptm ptm_from_unitary(const CMat& u, const PauliBasis& basis) {
  const int d = basis.hilbert_dim();
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("ptm_from_unitary: dimension mismatch");
  const double residue = (u.adjoint() * u - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
  if (residue > 1e-10) {
    std::ostringstream msg;
    msg << "ptm_from_unitary: input is not unitary, |U^dag U - I| = " << residue;
    throw std::invalid_argument(msg.str());
  }
  Ptm p;
  p.m = ptm_entries({{u, u.adjoint()}}, basis);
  p.trace_preserving = true;
  p.unital = true;
  return p;
}

Ptm ptm_from_kraus(const std::vector<CMat>& kraus, const PauliBasis& basis) {
  const int d = basis.hilbert_dim();
  if (kraus.empty()) throw std::invalid_argument("ptm_from_kraus: empty Kraus set");
  CMat tp = CMat::Zero(d, d);
  CMat un = CMat::Zero(d, d);
  std::vector<std::pair<CMat, CMat>> terms;
  for (const CMat& k : kraus) {
    if (k.rows() != d || k.cols() != d)
      throw std::invalid_argument("ptm_from_kraus: Kraus dimension mismatch");
    tp += k.adjoint() * k;
    un += k * k.adjoint();
    terms.emplace_back(k, k.adjoint());
  }
  const double residue = (tp - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
  if (residue > 1e-10) {
    std::ostringstream msg;
    msg << "ptm_from_kraus: not trace preserving, |sum K^dag K - I| = " << residue;
    throw std::invalid_argument(msg.str());
  }
  Ptm p;
  p.m = ptm_entries(terms, basis);
  p.trace_preserving = true;
  p.unital = (un - CMat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10;
  return p;
}

Ptm tensor(const Ptm& a, const Ptm& b) {
  if (a.dim() != 4 || b.dim() != 4)
    throw std::invalid_argument("tensor: expects two single-qubit PTMs");
  Mat kron(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      kron.block(4 * i, 4 * j, 4, 4) = a.m(i, j) * b.m;
  const Mat& perm = tau_reindex_permutation();
  Ptm out;
  out.m = perm * kron * perm.transpose();
  out.trace_preserving = a.trace_preserving && b.trace_preserving;
  out.unital = a.unital && b.unital;
  return out;
}

Ptm compose(const Ptm& second, const Ptm& first) {
  if (second.dim() != first.dim())
    throw std::invalid_argument("compose: dimension mismatch");
  Ptm out;
  out.m = second.m * first.m;
  out.trace_preserving = second.trace_preserving && first.trace_preserving;
  out.unital = second.unital && first.unital;
  return out;
}

bool is_trace_preserving(const Mat& ptm, double tol) {
  if (std::abs(ptm(0, 0) - 1.0) > tol) return false;
  return ptm.row(0).tail(ptm.cols() - 1).cwiseAbs().maxCoeff() <= tol;
}

bool is_unital(const Mat& ptm, double tol) {
  if (std::abs(ptm(0, 0) - 1.0) > tol) return false;
  return ptm.col(0).tail(ptm.rows() - 1).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> to_row_major(const Mat& m) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(m.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

Mat from_row_major(const std::vector<double>& data, int rows, int cols) {
  if (static_cast<int>(data.size()) != rows * cols)
    throw std::invalid_argument("from_row_major: size mismatch");
  Mat m(rows, cols);
  size_t k = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = data[k++];
  return m;
}

}  // namespace gss
