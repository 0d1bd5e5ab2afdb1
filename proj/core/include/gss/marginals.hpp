#pragma once

#include <array>
#include <string>
#include <vector>

#include "gss/gate_set.hpp"

namespace gss {

// Reconstructed unital marginals of the gate noise for the local Clifford
// group: Lambda_i = P_i Lambda P_i in the catalog sector bases.
struct MarginalSet {
  Mat block1;  // 3x3, qubit-1 traceless sector (tau 4,5,6)
  Mat block2;  // 3x3, qubit-2 traceless sector (tau 1,2,3)
  Mat block3;  // 9x9, joint sector (tau 7..15)

  // Full unital marginal: blocks on their native tau positions, 1 at tau0,
  // zero elsewhere.
  Mat full() const;
};

// Element-index sets of the probe families: set 1 = {C x 1} (24), set 2 =
// {1 x C} (24), set 3 = the full product set (576; exact reconstruction
// needs the complete group sum, the identity pair's decay being the plain
// sector-projector probe).
std::vector<int> marginal_probe_elements(const GateSet& c1xc1, int sector);

// Lambda_i = (|P_i|^2 / |C_i|) sum_C lambda_C P_i C P_i. `decays` is keyed
// like marginal_probe_elements(gs, sector). Throws on a size mismatch.
Mat reconstruct_marginal(const GateSet& c1xc1, int sector, const std::vector<double>& decays);

struct CrosstalkMatrices {
  Mat delta_r1;  // |Lambda3 - Lambda1 x Lambda2| entrywise
  Mat delta_r2;  // |(Lambda1 x Lambda2)^-1 Lambda3| entrywise
  bool r2_valid = false;
  double condition_number = 0.0;
};

CrosstalkMatrices crosstalk_matrices(const MarginalSet& ms);

// Pauli-twirl the full marginal, map the diagonal to Pauli error rates
// p_a = (1/16) sum_b (-1)^<P_a,P_b> (E_P)_bb, then project onto the
// probability simplex. Pre-projection negativity magnitude is reported.
Vec pauli_error_rates(const MarginalSet& ms, double* negativity = nullptr);

// Average over the 16 Pauli conjugations (diagonal of the input survives).
Mat pauli_twirl(const Mat& ptm);

// Euclidean projection onto {p >= 0, sum p = 1} (sort-and-threshold).
Vec project_to_simplex(const Vec& y);

// 1 if tau_a and tau_b anticommute, else 0.
int pauli_anticommutation(int a, int b);

struct EpsilonAmplitudes {
  double eps1 = 0.0, eps2 = 0.0, eps3 = 0.0;
  std::array<bool, 3> thresholded{false, false, false};
  double residual = 0.0;  // forward-map residual of the returned epsilons
  bool solved = false;
};

// Invert the fixed-weight parametrization
//   lambda_{1|2} = (1-e1)(1-c1 e3), lambda_{2|1} = (1-e2)(1-c1 e3),
//   lambda_{12} = (1-e1)(1-e2)(1-c2 e3),  c1 = 6/5, c2 = 4/5.
// e3 solves the quadratic from lambda12/(lambda_{1|2} lambda_{2|1}); e2 and
// e1 follow. Negative values with magnitude < 0.1 are thresholded to zero
// (evaluation order e2, e1, e3).
EpsilonAmplitudes epsilon_amplitudes(double lambda_1g2, double lambda_2g1, double lambda_12);

// Forward map, for round-trip checks and interval propagation.
std::array<double, 3> epsilon_forward(double e1, double e2, double e3);

}  // namespace gss
