#pragma once

#include <string>
#include <vector>

#include "gss/pauli_basis.hpp"

namespace gss {

// Input state and POVM, vectorized in the tau basis.
struct Measurement {
  std::string name;
  Vec rho;
  std::vector<Vec> povm;
  std::vector<std::string> labels;

  int outcomes() const { return static_cast<int>(povm.size()); }
  int label_index(const std::string& label) const;
};

// |00> input, four z-basis projectors (labels 00, 01, 10, 11).
const Measurement& measurement_z_basis();
// |0+> input, qubit 1 measured in z, qubit 2 in x (labels 0+, 0-, 1+, 1-).
const Measurement& measurement_mixed_zx();
// qubit-1-only readout: |0><0| x I/2 input, two-outcome POVM (labels 0, 1).
const Measurement& measurement_qubit1_z();
// leakage two-outcome readout: rho = 1_1/2, POVM {1_1, 1_2} (labels comp, leak).
const Measurement& measurement_leakage();

const Measurement& measurement_by_name(const std::string& name);
std::vector<std::string> measurement_names();

// POVM completeness: sum_x E_x = identity operator.
bool povm_complete(const Measurement& m, double tol = 1e-10);

}  // namespace gss
