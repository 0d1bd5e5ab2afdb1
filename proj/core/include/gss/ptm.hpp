#pragma once

#include <vector>

#include "gss/pauli_basis.hpp"

namespace gss {

// Pauli transfer matrix of a channel: real d^2 x d^2 matrix with entries
// Tr(tau_i^dag E(tau_j)) in the basis ordering of PauliBasis.
struct Ptm {
  Mat m;
  bool trace_preserving = false;
  bool unital = false;

  int dim() const { return static_cast<int>(m.rows()); }
};

// PTM of the unitary channel rho -> U rho U^dag. Throws if U is not unitary
// to 1e-10 (the message carries the unitarity residue).
Ptm ptm_from_unitary(const CMat& u, const PauliBasis& basis);

// PTM of the Kraus channel rho -> sum_k K_k rho K_k^dag. Throws if the set is
// not trace preserving to 1e-10. The unital flag is set iff sum K K^dag = 1.
Ptm ptm_from_kraus(const std::vector<CMat>& kraus, const PauliBasis& basis);

// Tensor product of two single-qubit PTMs, re-indexed into the two-qubit tau
// ordering.
Ptm tensor(const Ptm& a, const Ptm& b);

// Composition: apply `first`, then `second` (matrix product second * first).
Ptm compose(const Ptm& second, const Ptm& first);

bool is_trace_preserving(const Mat& ptm, double tol = 1e-9);
bool is_unital(const Mat& ptm, double tol = 1e-9);

// Row-major JSON-friendly flattening.
std::vector<double> to_row_major(const Mat& m);
Mat from_row_major(const std::vector<double>& data, int rows, int cols);

}  // namespace gss
