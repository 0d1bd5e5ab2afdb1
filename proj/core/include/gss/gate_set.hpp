#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gss/ptm.hpp"

namespace gss {

struct GateElement {
  CMat unitary;   // a representative (global phase arbitrary)
  Mat ptm;
  int cnot_cost = 0;
};

// Invariant subspace with one or more copies of the same irrep. Each copy is
// an orthonormal 16xD (or 4xD) basis; copy bases are matched so that
// V_k^T R(g) V_k is the same matrix for every copy.
struct IrrepSector {
  std::string label;
  std::vector<Mat> copies;

  int dim() const { return static_cast<int>(copies.front().cols()); }
  int multiplicity() const { return static_cast<int>(copies.size()); }
  Mat copy_projector(int k) const { return copies.at(k) * copies.at(k).transpose(); }
  // Isotypic projector (sum over copies).
  Mat projector() const;
  // Connecting operator P^(k,k') = V_k V_k'^T.
  Mat connector(int k, int kp) const { return copies.at(k) * copies.at(kp).transpose(); }
  // When every copy basis is made of basis vectors, their indices.
  std::optional<std::vector<int>> basis_indices(int k) const;
};

struct Generator {
  std::string name;
  CMat unitary;
  int cnot_cost = 0;
};

struct GateSet {
  std::string name;
  int n_qubits = 2;
  std::vector<GateElement> elements;
  std::vector<IrrepSector> sectors;
  // False when the catalog partitions into coarser invariant subspaces rather
  // than true irreps (the G(1) catalog); character checks are skipped then.
  bool sectors_are_irreps = true;

  int order() const { return static_cast<int>(elements.size()); }
  int basis_size() const { return n_qubits == 1 ? 4 : 16; }
  const PauliBasis& basis() const;
  const IrrepSector& sector(const std::string& label) const;
  // Content hash over element PTMs and sector catalog (hex string).
  std::string content_hash() const;
};

// Closure of the generators under multiplication modulo global phase (PTMs
// quotient the phase). Elements are deduplicated on a 1e-9-quantized PTM key
// and finally ordered by that key. cnot_cost is the generator-cost sum along
// the shortest word found (breadth-first). Throws if the closure exceeds cap.
GateSet generate_group(const std::string& name, const std::vector<Generator>& generators,
                       int cap, int n_qubits = 2);

// Built-in gate sets with their sector catalogs attached (cached; thread-safe
// through static initialization of each entry).
const GateSet& gate_set_c1();
const GateSet& gate_set_c2();
const GateSet& gate_set_g1();
const GateSet& gate_set_c1xc1();
const GateSet& gate_set_c1xi();
const GateSet& gate_set_leakage();
const GateSet& gate_set_by_name(const std::string& name);
std::vector<std::string> gate_set_names();

// (1/|G|) sum_g R(g): projector onto the group-invariant subspace.
Mat trivial_projector(const GateSet& gs);

// Product-representation trivial projector E_g[R_i(g) (x) R(g)] where
// R_i(g) = P R(g) P is the block supported on `sector_indices`
// (n^2 x n^2 with n = basis size). Used by the analytic sequence-function
// model.
Mat trivial_projector_product(const GateSet& gs, const std::vector<int>& sector_indices);

// Multiplicity a_i = (1/|G|) sum_g chi(g) chi_i(g) of the irrep with
// character `irrep_character` (indexed like gs.elements) inside the full PTM
// representation. Throws if the result is not an integer to 1e-6.
int multiplicity(const GateSet& gs, const std::vector<double>& irrep_character);

struct SectorDecay {
  std::string label;
  // lambda(k,k') = Tr(P^(k',k) Lambda) / dim; diagonal entries are the usual
  // per-sector decay rates.
  Mat lambdas;
};

struct TwirlResult {
  Mat channel;  // (1/|G|) sum_g R(g) Lambda R(g)^T
  std::vector<SectorDecay> decays;
};

TwirlResult twirl(const GateSet& gs, const Mat& channel);

// Load-time catalog validation: copy bases orthonormal and invariant, matched
// irrep matrices across copies, characters orthonormal across sectors, and
// sum of dim x multiplicity equal to the basis size. Throws on failure.
void validate_sectors(const GateSet& gs);

// 64-bit FNV-1a, used for content hashes throughout.
uint64_t fnv1a(const void* data, size_t len, uint64_t seed = 14695981039346656037ull);
std::string hash_hex(uint64_t h);

}  // namespace gss
