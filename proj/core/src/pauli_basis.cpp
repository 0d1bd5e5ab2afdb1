#include "gss/pauli_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace gss {

const std::vector<CMat>& pauli_1q() {
  static const std::vector<CMat> paulis = [] {
    using namespace std::complex_literals;
    std::vector<CMat> p(4, CMat(2, 2));
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -1i, 1i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return paulis;
}

int tau_index(int a, int b) {
  if (a == 0 && b == 0) return 0;
  if (a == 0) return b;
  if (b == 0) return 3 + a;
  return 6 + 3 * (a - 1) + b;
}

std::pair<int, int> tau_factors(int tau) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (tau_index(a, b) == tau) return {a, b};
  throw std::invalid_argument("tau index out of range");
}

PauliBasis::PauliBasis(int n_qubits) : n_qubits_(n_qubits) {
  const auto& p = pauli_1q();
  if (n_qubits == 1) {
    for (int a = 0; a < 4; ++a) elements_.push_back(p[a] / std::sqrt(2.0));
  } else if (n_qubits == 2) {
    elements_.resize(16);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        CMat t(4, 4);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            t.block(2 * i, 2 * j, 2, 2) = p[a](i, j) * p[b];
        elements_[tau_index(a, b)] = t / 2.0;
      }
  } else {
    throw std::invalid_argument("PauliBasis supports 1 or 2 qubits");
  }
}

const PauliBasis& PauliBasis::one_qubit() {
  static const PauliBasis b(1);
  return b;
}

const PauliBasis& PauliBasis::two_qubit() {
  static const PauliBasis b(2);
  return b;
}

const Mat& tau_reindex_permutation() {
  static const Mat perm = [] {
    Mat p = Mat::Zero(16, 16);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) p(tau_index(a, b), 4 * a + b) = 1.0;
    return p;
  }();
  return perm;
}

Vec vectorize(const CMat& op, const PauliBasis& basis) {
  const int d = basis.hilbert_dim();
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("vectorize: operator dimension mismatch");
  if ((op - op.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("vectorize: operator is not Hermitian");
  Vec v(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const std::complex<double> c = (basis.element(i).adjoint() * op).trace();
    if (std::abs(c.imag()) > 1e-12)
      throw std::runtime_error("vectorize: complex component residue");
    v(i) = c.real();
  }
  return v;
}

CMat unvectorize(const Vec& v, const PauliBasis& basis) {
  if (v.size() != basis.size())
    throw std::invalid_argument("unvectorize: dimension mismatch");
  CMat op = CMat::Zero(basis.hilbert_dim(), basis.hilbert_dim());
  for (int i = 0; i < basis.size(); ++i) op += v(i) * basis.element(i);
  return op;
}

}  // namespace gss
