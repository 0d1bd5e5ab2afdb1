#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gss/gate_set.hpp"

namespace gss {

// Gate-error channel specification. Two-qubit channels throughout (the
// leakage system shares the d = 4 basis).
struct NoiseSpec {
  enum class Kind {
    none,
    pauli,              // 16 probabilities in tau order
    amplitude_damping,  // AD(gamma1) x AD(gamma2)
    rz,                 // Rz(theta1) x Rz(theta2)
    rzz,
    rxx,
    ryy,
    cnot,       // CNOT as a coherent error channel
    composite,  // ordered product; children[0] applied first
  };
  enum class Application { uniform, per_cnot_count, per_qubit_local };

  Kind kind = Kind::none;
  Application application = Application::uniform;
  std::vector<double> pauli_probs;  // kind == pauli
  double gamma1 = 0.0, gamma2 = 0.0;
  double theta = 0.0, theta1 = 0.0, theta2 = 0.0;
  std::vector<NoiseSpec> children;

  static NoiseSpec none_spec() { return {}; }
  static NoiseSpec pauli(std::vector<double> probs);
  // p_identity + (1 - p_identity) spread uniformly over the six weight-1
  // Paulis; the default gate-error model where the source leaves rates open.
  static NoiseSpec weight1_pauli(double p_identity);
  static NoiseSpec amplitude_damping(double gamma1, double gamma2);
  static NoiseSpec rz(double theta1, double theta2);
  static NoiseSpec rotation(Kind which, double theta);  // rzz / rxx / ryy
  static NoiseSpec cnot_error();
  static NoiseSpec composite_of(std::vector<NoiseSpec> children);
  // per-cnot-count model: 0-CNOT elements get the Pauli channel, k-CNOT
  // elements get (R_zz(theta) o Pauli)^k.
  static NoiseSpec per_cnot(std::vector<double> pauli_probs, double theta);
  // per-qubit-local model: uniform [Rz(theta1) o AD(gamma1)] x
  // [Rz(theta2) o AD(gamma2)].
  static NoiseSpec per_qubit_local(double theta1, double gamma1, double theta2, double gamma2);
};

// PTM of the specified channel (uniform part; per_cnot_count resolves through
// assign_noise). Throws on invalid probability vectors or gamma out of range.
Mat build_channel(const NoiseSpec& spec);

// Single-qubit helper PTMs.
Mat ptm_amplitude_damping_1q(double gamma);
Mat ptm_rz_1q(double theta);

struct SpamSpec {
  // Channels applied to vec(rho) and (adjointly) to each POVM element.
  std::optional<NoiseSpec> prep;
  std::optional<NoiseSpec> meas;
};

struct NoisyGateSet {
  const GateSet* base = nullptr;
  bool uniform = true;
  Mat uniform_noise;               // valid when uniform
  std::vector<Mat> per_element;    // valid when !uniform
  Mat prep_noise;                  // identity when absent
  Mat meas_noise;

  const Mat& noise_for(int element) const {
    return uniform ? uniform_noise : per_element[static_cast<size_t>(element)];
  }
};

// Attach noise to a gate set: noisy gate = Lambda(g) R(g) in PTM
// left-multiplication order. per_cnot_count requires element cnot_cost
// metadata (present for generated groups).
NoisyGateSet assign_noise(const GateSet& gs, const NoiseSpec& spec, const SpamSpec& spam = {});

}  // namespace gss
