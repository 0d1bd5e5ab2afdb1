#include "gss/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace gss {

namespace {

using Kind = NoiseSpec::Kind;

CMat rot2q(Kind which, double theta) {
  const auto& p = pauli_1q();
  int axis = which == Kind::rxx ? 1 : which == Kind::ryy ? 2 : 3;
  CMat pp(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) pp.block(2 * i, 2 * j, 2, 2) = p[axis](i, j) * p[axis];
  const std::complex<double> im(0, 1);
  // exp(-i theta P/2) = cos(theta/2) I - i sin(theta/2) P for P^2 = I
  return std::cos(theta / 2) * CMat::Identity(4, 4) - im * std::sin(theta / 2) * pp;
}

void check_pauli_probs(const std::vector<double>& p) {
  if (p.size() != 16) throw std::invalid_argument("pauli noise needs 16 probabilities");
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("pauli noise: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("pauli noise: probabilities sum to " + std::to_string(sum));
}

}  // namespace

NoiseSpec NoiseSpec::pauli(std::vector<double> probs) {
  NoiseSpec s;
  s.kind = Kind::pauli;
  s.pauli_probs = std::move(probs);
  return s;
}

NoiseSpec NoiseSpec::weight1_pauli(double p_identity) {
  std::vector<double> p(16, 0.0);
  p[0] = p_identity;
  for (int i = 1; i <= 6; ++i) p[static_cast<size_t>(i)] = (1.0 - p_identity) / 6.0;
  return pauli(std::move(p));
}

NoiseSpec NoiseSpec::amplitude_damping(double gamma1, double gamma2) {
  NoiseSpec s;
  s.kind = Kind::amplitude_damping;
  s.gamma1 = gamma1;
  s.gamma2 = gamma2;
  return s;
}

NoiseSpec NoiseSpec::rz(double theta1, double theta2) {
  NoiseSpec s;
  s.kind = Kind::rz;
  s.theta1 = theta1;
  s.theta2 = theta2;
  return s;
}

NoiseSpec NoiseSpec::rotation(Kind which, double theta) {
  if (which != Kind::rzz && which != Kind::rxx && which != Kind::ryy)
    throw std::invalid_argument("rotation: expects rzz/rxx/ryy");
  NoiseSpec s;
  s.kind = which;
  s.theta = theta;
  return s;
}

NoiseSpec NoiseSpec::cnot_error() {
  NoiseSpec s;
  s.kind = Kind::cnot;
  return s;
}

NoiseSpec NoiseSpec::composite_of(std::vector<NoiseSpec> children) {
  NoiseSpec s;
  s.kind = Kind::composite;
  s.children = std::move(children);
  return s;
}

NoiseSpec NoiseSpec::per_cnot(std::vector<double> pauli_probs, double theta) {
  NoiseSpec s;
  s.kind = Kind::composite;
  s.application = Application::per_cnot_count;
  s.theta = theta;
  s.children = {pauli(std::move(pauli_probs)), rotation(Kind::rzz, theta)};
  return s;
}

NoiseSpec NoiseSpec::per_qubit_local(double theta1, double gamma1, double theta2, double gamma2) {
  NoiseSpec s;
  s.kind = Kind::composite;
  s.application = Application::per_qubit_local;
  s.theta1 = theta1;
  s.theta2 = theta2;
  s.gamma1 = gamma1;
  s.gamma2 = gamma2;
  return s;
}

Mat ptm_amplitude_damping_1q(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("amplitude damping: gamma outside [0,1]");
  CMat k0 = CMat::Zero(2, 2), k1 = CMat::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return ptm_from_kraus({k0, k1}, PauliBasis::one_qubit()).m;
}

Mat ptm_rz_1q(double theta) {
  CMat u = CMat::Zero(2, 2);
  u(0, 0) = std::exp(std::complex<double>(0, -theta / 2));
  u(1, 1) = std::exp(std::complex<double>(0, theta / 2));
  return ptm_from_unitary(u, PauliBasis::one_qubit()).m;
}

Mat build_channel(const NoiseSpec& spec) {
  const PauliBasis& b2 = PauliBasis::two_qubit();
  const Mat& perm = tau_reindex_permutation();
  auto tensor_1q = [&](const Mat& a, const Mat& bm) {
    Mat kron(16, 16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) kron.block(4 * i, 4 * j, 4, 4) = a(i, j) * bm;
    return Mat(perm * kron * perm.transpose());
  };
  switch (spec.kind) {
    case Kind::none:
      return Mat::Identity(16, 16);
    case Kind::pauli: {
      check_pauli_probs(spec.pauli_probs);
      Mat m = Mat::Zero(16, 16);
      for (int j = 0; j < 16; ++j) {
        if (spec.pauli_probs[static_cast<size_t>(j)] == 0.0) continue;
        const auto [a, bb] = tau_factors(j);
        CMat pj(4, 4);
        for (int i = 0; i < 2; ++i)
          for (int k = 0; k < 2; ++k)
            pj.block(2 * i, 2 * k, 2, 2) = pauli_1q()[a](i, k) * pauli_1q()[bb];
        m += spec.pauli_probs[static_cast<size_t>(j)] * ptm_from_unitary(pj, b2).m;
      }
      return m;
    }
    case Kind::amplitude_damping:
      return tensor_1q(ptm_amplitude_damping_1q(spec.gamma1), ptm_amplitude_damping_1q(spec.gamma2));
    case Kind::rz:
      return tensor_1q(ptm_rz_1q(spec.theta1), ptm_rz_1q(spec.theta2));
    case Kind::rzz:
    case Kind::rxx:
    case Kind::ryy:
      return ptm_from_unitary(rot2q(spec.kind, spec.theta), b2).m;
    case Kind::cnot: {
      CMat c = CMat::Zero(4, 4);
      c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1;
      return ptm_from_unitary(c, b2).m;
    }
    case Kind::composite: {
      if (spec.application == NoiseSpec::Application::per_qubit_local) {
        const Mat q1 = ptm_rz_1q(spec.theta1) * ptm_amplitude_damping_1q(spec.gamma1);
        const Mat q2 = ptm_rz_1q(spec.theta2) * ptm_amplitude_damping_1q(spec.gamma2);
        return tensor_1q(q1, q2);
      }
      Mat m = Mat::Identity(16, 16);
      for (const NoiseSpec& c : spec.children) m = build_channel(c) * m;
      return m;
    }
  }
  throw std::logic_error("build_channel: unhandled kind");
}

NoisyGateSet assign_noise(const GateSet& gs, const NoiseSpec& spec, const SpamSpec& spam) {
  const int n = gs.basis_size();
  if (n != 16) throw std::invalid_argument("assign_noise: two-qubit gate sets only");
  NoisyGateSet ng;
  ng.base = &gs;
  ng.prep_noise = spam.prep ? build_channel(*spam.prep) : Mat::Identity(n, n);
  ng.meas_noise = spam.meas ? build_channel(*spam.meas) : Mat::Identity(n, n);

  if (spec.application == NoiseSpec::Application::per_cnot_count) {
    if (spec.children.size() != 2)
      throw std::invalid_argument("per_cnot_count: malformed spec");
    const Mat pauli = build_channel(spec.children[0]);
    const Mat lambda1 = build_channel(spec.children[1]) * pauli;
    ng.uniform = false;
    ng.per_element.reserve(gs.elements.size());
    for (const auto& el : gs.elements) {
      Mat lam = pauli;
      if (el.cnot_cost > 0) {
        lam = lambda1;
        for (int k = 1; k < el.cnot_cost; ++k) lam = lambda1 * lam;
      }
      ng.per_element.push_back(std::move(lam));
    }
    return ng;
  }
  ng.uniform = true;
  ng.uniform_noise = build_channel(spec);
  if (!is_trace_preserving(ng.uniform_noise))
    throw std::runtime_error("assign_noise: built channel is not trace preserving");
  return ng;
}

}  // namespace gss
