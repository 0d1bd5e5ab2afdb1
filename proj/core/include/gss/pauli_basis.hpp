#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gss {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Single-qubit Pauli matrices I, X, Y, Z (unnormalized).
const std::vector<CMat>& pauli_1q();

// Ordered basis of normalized Pauli operators (Hilbert-Schmidt orthonormal).
//
// For one qubit the order is I, X, Y, Z (each divided by sqrt(2)). For two
// qubits the tau ordering is used: tau0 = s0 x s0, then the three s0 x s_b,
// then the three s_a x s0, then the nine s_a x s_b (a,b >= 1, lexicographic),
// each divided by 2.
class PauliBasis {
 public:
  static const PauliBasis& one_qubit();
  static const PauliBasis& two_qubit();

  int n_qubits() const { return n_qubits_; }
  int hilbert_dim() const { return 1 << n_qubits_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<CMat>& elements() const { return elements_; }
  const CMat& element(int i) const { return elements_.at(i); }

 private:
  explicit PauliBasis(int n_qubits);
  int n_qubits_;
  std::vector<CMat> elements_;
};

// tau index <-> (a, b) single-qubit factor labels, two-qubit basis only.
int tau_index(int a, int b);
std::pair<int, int> tau_factors(int tau);

// Permutation taking the Kronecker order (4a+b) to the tau order, as a
// 16x16 matrix P with P(tau_index(a,b), 4a+b) = 1.
const Mat& tau_reindex_permutation();

// Components Tr(tau_i^dag op) of a Hermitian operator. All components must be
// real to 1e-12; a larger imaginary residue or non-Hermitian input throws.
Vec vectorize(const CMat& op, const PauliBasis& basis);

// Inverse of vectorize.
CMat unvectorize(const Vec& v, const PauliBasis& basis);

}  // namespace gss
