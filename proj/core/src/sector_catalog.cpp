#include <cmath>
#include <mutex>
#include <stdexcept>

#include "gss/gate_set.hpp"

// Built-in gate sets and their invariant-subspace catalogs.
//
// tau index layout (two qubits): 0 = I.I, 1..3 = I.{X,Y,Z}, 4..6 = {X,Y,Z}.I,
// 7..15 = {X,Y,Z}.{X,Y,Z} lexicographic.

namespace gss {

namespace {

CMat u_x() { return pauli_1q()[1]; }
CMat u_z() { return pauli_1q()[3]; }
CMat u_h() {
  CMat h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}
CMat u_s() {
  CMat s(2, 2);
  s << 1, 0, 0, std::complex<double>(0, 1);
  return s;
}
CMat kron2(const CMat& a, const CMat& b) {
  CMat out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return out;
}

CMat u_cnot01() {
  CMat c = CMat::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1;
  return c;
}
CMat u_cnot10() {
  CMat c = CMat::Zero(4, 4);
  c(0, 0) = c(3, 1) = c(2, 2) = c(1, 3) = 1;
  return c;
}

// block-diagonal 4-level gate: `c` on the computational, `l` on the leakage
// subspace
CMat block_gate(const CMat& c, const CMat& l) {
  CMat u = CMat::Zero(4, 4);
  u.block(0, 0, 2, 2) = c;
  u.block(2, 2, 2, 2) = l;
  return u;
}

Mat axis_copy(int n, const std::vector<std::pair<int, double>>& cols_entries, int dim) {
  Mat v = Mat::Zero(n, dim);
  int c = 0;
  for (const auto& [idx, sign] : cols_entries) v(idx, c++) = sign;
  return v;
}

Mat axis_copy(std::initializer_list<int> indices) {
  Mat v = Mat::Zero(16, static_cast<int>(indices.size()));
  int c = 0;
  for (int i : indices) v(i, c++) = 1.0;
  return v;
}

Mat combo_copy(std::initializer_list<std::pair<int, double>> a) {
  Mat v = Mat::Zero(16, 1);
  for (const auto& [i, w] : a) v(i, 0) = w;
  return v;
}

Mat combo_copy2(std::initializer_list<std::pair<int, double>> a,
                std::initializer_list<std::pair<int, double>> b) {
  Mat v = Mat::Zero(16, 2);
  for (const auto& [i, w] : a) v(i, 0) = w;
  for (const auto& [i, w] : b) v(i, 1) = w;
  return v;
}

GateSet build_c1() {
  GateSet gs = generate_group("c1", {{"H", u_h(), 0}, {"S", u_s(), 0}}, 64, 1);
  gs.sectors = {
      {"trivial", {axis_copy(4, {{0, 1.0}}, 1)}},
      {"p1", {axis_copy(4, {{1, 1.0}, {2, 1.0}, {3, 1.0}}, 3)}},
  };
  validate_sectors(gs);
  return gs;
}

GateSet build_c2() {
  GateSet gs = generate_group("c2",
                              {{"HxI", kron2(u_h(), CMat::Identity(2, 2)), 0},
                               {"IxH", kron2(CMat::Identity(2, 2), u_h()), 0},
                               {"SxI", kron2(u_s(), CMat::Identity(2, 2)), 0},
                               {"IxS", kron2(CMat::Identity(2, 2), u_s()), 0},
                               {"CNOT01", u_cnot01(), 1}},
                              16384, 2);
  gs.sectors = {
      {"trivial", {axis_copy({0})}},
      {"p1", {axis_copy({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15})}},
  };
  validate_sectors(gs);
  return gs;
}

GateSet build_g1() {
  GateSet gs = generate_group("g1",
                              {{"XxI", kron2(u_x(), CMat::Identity(2, 2)), 0},
                               {"IxX", kron2(CMat::Identity(2, 2), u_x()), 0},
                               {"CNOT01", u_cnot01(), 1},
                               {"CNOT10", u_cnot10(), 1}},
                              64, 2);
  // The protocol's filtering subspaces: these are invariant but not
  // irreducible (the 12-dim block even holds a second trivial copy along
  // tau1+tau4+tau7), so character checks do not apply.
  gs.sectors = {
      {"trivial", {axis_copy({0})}},
      {"p1", {axis_copy({3, 6, 15})}},
      {"p2", {axis_copy({1, 2, 4, 5, 7, 8, 9, 10, 11, 12, 13, 14})}},
  };
  gs.sectors_are_irreps = false;
  validate_sectors(gs);
  return gs;
}

GateSet build_c1xc1() {
  GateSet gs = generate_group("c1xc1",
                              {{"HxI", kron2(u_h(), CMat::Identity(2, 2)), 0},
                               {"SxI", kron2(u_s(), CMat::Identity(2, 2)), 0},
                               {"IxH", kron2(CMat::Identity(2, 2), u_h()), 0},
                               {"IxS", kron2(CMat::Identity(2, 2), u_s()), 0}},
                              1024, 2);
  gs.sectors = {
      {"trivial", {axis_copy({0})}},
      {"p1", {axis_copy({4, 5, 6})}},
      {"p2", {axis_copy({1, 2, 3})}},
      {"p3", {axis_copy({7, 8, 9, 10, 11, 12, 13, 14, 15})}},
  };
  validate_sectors(gs);
  return gs;
}

GateSet build_c1xi() {
  GateSet gs = generate_group("c1xi",
                              {{"HxI", kron2(u_h(), CMat::Identity(2, 2)), 0},
                               {"SxI", kron2(u_s(), CMat::Identity(2, 2)), 0}},
                              64, 2);
  // Non-multiplicity-free: the trivial and the 3-dim irrep each appear four
  // times, with copies indexed by the idle qubit's Pauli label.
  gs.sectors = {
      {"trivial", {axis_copy({0}), axis_copy({1}), axis_copy({2}), axis_copy({3})}},
      {"p1", {axis_copy({4, 5, 6}), axis_copy({7, 10, 13}), axis_copy({8, 11, 14}),
              axis_copy({9, 12, 15})}},
  };
  validate_sectors(gs);
  return gs;
}

GateSet build_leakage() {
  GateSet gs = generate_group("leakage",
                              {{"Xc+Zl", block_gate(u_x(), u_z()), 0},
                               {"Zc+Hl", block_gate(u_z(), u_h()), 0}},
                              64, 2);
  const double r = 1.0 / std::sqrt(2.0);
  // Only the two trivial copies (tau0, tau6) appear in the paper; the rest of
  // the decomposition was computed from the 16-element rep and frozen here.
  gs.sectors = {
      {"trivial", {axis_copy({0}), axis_copy({6})}},
      {"sign_y", {combo_copy({{2, r}, {14, r}}), combo_copy({{2, r}, {14, -r}})}},
      {"sign_x", {combo_copy({{1, r}, {13, r}})}},
      {"sign_z", {combo_copy({{3, r}, {15, r}})}},
      {"planar", {combo_copy2({{1, r}, {13, -r}}, {{3, r}, {15, -r}})}},
      {"offdiag_1", {axis_copy({4, 11}), combo_copy2({{5, 1.0}}, {{8, -1.0}})}},
      {"offdiag_2", {axis_copy({7, 9}), axis_copy({10, 12})}},
  };
  validate_sectors(gs);
  return gs;
}

}  // namespace

const GateSet& gate_set_c1() {
  static const GateSet gs = build_c1();
  return gs;
}
const GateSet& gate_set_c2() {
  static const GateSet gs = build_c2();
  return gs;
}
const GateSet& gate_set_g1() {
  static const GateSet gs = build_g1();
  return gs;
}
const GateSet& gate_set_c1xc1() {
  static const GateSet gs = build_c1xc1();
  return gs;
}
const GateSet& gate_set_c1xi() {
  static const GateSet gs = build_c1xi();
  return gs;
}
const GateSet& gate_set_leakage() {
  static const GateSet gs = build_leakage();
  return gs;
}

const GateSet& gate_set_by_name(const std::string& name) {
  if (name == "c1") return gate_set_c1();
  if (name == "c2") return gate_set_c2();
  if (name == "g1") return gate_set_g1();
  if (name == "c1xc1") return gate_set_c1xc1();
  if (name == "c1xi") return gate_set_c1xi();
  if (name == "leakage") return gate_set_leakage();
  std::string valid;
  for (const auto& n : gate_set_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown gate set '" + name + "'; valid: " + valid);
}

std::vector<std::string> gate_set_names() {
  return {"c1", "c2", "g1", "c1xc1", "c1xi", "leakage"};
}

}  // namespace gss
