#include "gss/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace gss {

namespace {

Vec vec_ket(const CVec& psi) {
  const CMat rho = psi * psi.adjoint();
  return vectorize(rho, PauliBasis::two_qubit());
}

CVec basis_ket(int i) {
  CVec v = CVec::Zero(4);
  v(i) = 1.0;
  return v;
}

Measurement build_z_basis() {
  Measurement m;
  m.name = "z_basis";
  m.labels = {"00", "01", "10", "11"};
  for (int i = 0; i < 4; ++i) m.povm.push_back(vec_ket(basis_ket(i)));
  m.rho = m.povm[0];
  return m;
}

Measurement build_mixed_zx() {
  Measurement m;
  m.name = "mixed_zx";
  m.labels = {"0+", "0-", "1+", "1-"};
  const double r = 1.0 / std::sqrt(2.0);
  const CVec plus = (CVec(2) << r, r).finished();
  const CVec minus = (CVec(2) << r, -r).finished();
  const CVec zero = (CVec(2) << 1, 0).finished();
  const CVec one = (CVec(2) << 0, 1).finished();
  for (const CVec& a : {zero, one})
    for (const CVec& b : {plus, minus}) {
      CVec psi(4);
      psi << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
      m.povm.push_back(vec_ket(psi));
    }
  m.rho = m.povm[0];
  return m;
}

Measurement build_qubit1_z() {
  Measurement m;
  m.name = "qubit1_z";
  m.labels = {"0", "1"};
  CMat e0 = CMat::Zero(4, 4);
  e0(0, 0) = e0(1, 1) = 1.0;
  CMat e1 = CMat::Zero(4, 4);
  e1(2, 2) = e1(3, 3) = 1.0;
  m.povm = {vectorize(e0, PauliBasis::two_qubit()), vectorize(e1, PauliBasis::two_qubit())};
  m.rho = m.povm[0] / 2.0;  // |0><0| x I/2
  return m;
}

Measurement build_leakage() {
  Measurement m;
  m.name = "leakage";
  m.labels = {"comp", "leak"};
  CMat e0 = CMat::Zero(4, 4);
  e0(0, 0) = e0(1, 1) = 1.0;
  CMat e1 = CMat::Zero(4, 4);
  e1(2, 2) = e1(3, 3) = 1.0;
  m.povm = {vectorize(e0, PauliBasis::two_qubit()), vectorize(e1, PauliBasis::two_qubit())};
  m.rho = m.povm[0] / 2.0;  // 1_1 / d_1
  return m;
}

}  // namespace

int Measurement::label_index(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw std::invalid_argument("measurement '" + name + "' has no outcome '" + label + "'");
}

const Measurement& measurement_z_basis() {
  static const Measurement m = build_z_basis();
  return m;
}
const Measurement& measurement_mixed_zx() {
  static const Measurement m = build_mixed_zx();
  return m;
}
const Measurement& measurement_qubit1_z() {
  static const Measurement m = build_qubit1_z();
  return m;
}
const Measurement& measurement_leakage() {
  static const Measurement m = build_leakage();
  return m;
}

const Measurement& measurement_by_name(const std::string& name) {
  if (name == "z_basis") return measurement_z_basis();
  if (name == "mixed_zx") return measurement_mixed_zx();
  if (name == "qubit1_z") return measurement_qubit1_z();
  if (name == "leakage") return measurement_leakage();
  std::string valid;
  for (const auto& n : measurement_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown measurement '" + name + "'; valid: " + valid);
}

std::vector<std::string> measurement_names() {
  return {"z_basis", "mixed_zx", "qubit1_z", "leakage"};
}

bool povm_complete(const Measurement& m, double tol) {
  Vec sum = Vec::Zero(m.povm.front().size());
  for (const Vec& e : m.povm) sum += e;
  // vec(identity) = sqrt(d) e_0 in a normalized basis
  Vec id = Vec::Zero(sum.size());
  id(0) = std::sqrt(sum.size() == 16 ? 4.0 : 2.0);
  return (sum - id).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace gss
