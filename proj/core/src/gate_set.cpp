#include "gss/gate_set.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gss {

namespace {

std::vector<int64_t> quantized_key(const Mat& m) {
  std::vector<int64_t> key(static_cast<size_t>(m.size()));
  size_t k = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) key[k++] = llround(m(i, j) * 1e9);
  return key;
}

struct KeyHash {
  size_t operator()(const std::vector<int64_t>& key) const {
    uint64_t h = 14695981039346656037ull;
    for (int64_t v : key) {
      h ^= static_cast<uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

uint64_t fnv1a(const void* data, size_t len, uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

Mat IrrepSector::projector() const {
  Mat p = Mat::Zero(copies.front().rows(), copies.front().rows());
  for (const Mat& v : copies) p += v * v.transpose();
  return p;
}

std::optional<std::vector<int>> IrrepSector::basis_indices(int k) const {
  const Mat& v = copies.at(k);
  std::vector<int> idx;
  for (int c = 0; c < v.cols(); ++c) {
    int hit = -1;
    for (int r = 0; r < v.rows(); ++r) {
      if (std::abs(v(r, c)) > 1e-12) {
        if (hit >= 0 || std::abs(std::abs(v(r, c)) - 1.0) > 1e-12) return std::nullopt;
        hit = r;
      }
    }
    idx.push_back(hit);
  }
  return idx;
}

const PauliBasis& GateSet::basis() const {
  return n_qubits == 1 ? PauliBasis::one_qubit() : PauliBasis::two_qubit();
}

const IrrepSector& GateSet::sector(const std::string& label) const {
  for (const auto& s : sectors)
    if (s.label == label) return s;
  throw std::invalid_argument("gate set '" + name + "' has no sector '" + label + "'");
}

std::string GateSet::content_hash() const {
  uint64_t h = fnv1a(name.data(), name.size());
  for (const auto& el : elements) {
    const auto key = quantized_key(el.ptm);
    h = fnv1a(key.data(), key.size() * sizeof(int64_t), h);
    h = fnv1a(&el.cnot_cost, sizeof(el.cnot_cost), h);
  }
  for (const auto& s : sectors) {
    h = fnv1a(s.label.data(), s.label.size(), h);
    for (const auto& v : s.copies) {
      const auto key = quantized_key(v);
      h = fnv1a(key.data(), key.size() * sizeof(int64_t), h);
    }
  }
  return hash_hex(h);
}

GateSet generate_group(const std::string& name, const std::vector<Generator>& generators,
                       int cap, int n_qubits) {
  if (generators.empty()) throw std::invalid_argument("generate_group: no generators");
  const PauliBasis& basis = n_qubits == 1 ? PauliBasis::one_qubit() : PauliBasis::two_qubit();
  const int d = basis.hilbert_dim();

  struct Gen {
    CMat u;
    Mat ptm;
    int cost;
    std::string name;
  };
  std::vector<Gen> gens;
  for (const auto& g : generators)
    gens.push_back({g.unitary, ptm_from_unitary(g.unitary, basis).m, g.cnot_cost, g.name});

  GateSet gs;
  gs.name = name;
  gs.n_qubits = n_qubits;

  std::unordered_map<std::vector<int64_t>, int, KeyHash> seen;
  GateElement identity{CMat::Identity(d, d), Mat::Identity(basis.size(), basis.size()), 0};
  gs.elements.push_back(identity);
  seen.emplace(quantized_key(identity.ptm), 0);

  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      GateElement next;
      next.ptm = g.ptm * gs.elements[cur].ptm;
      auto key = quantized_key(next.ptm);
      if (seen.count(key)) continue;
      next.unitary = g.u * gs.elements[cur].unitary;
      next.cnot_cost = gs.elements[cur].cnot_cost + g.cost;
      if (static_cast<int>(gs.elements.size()) >= cap) {
        throw std::runtime_error("generate_group('" + name + "'): closure not reached within cap " +
                                 std::to_string(cap) + "; first overflow product: " + g.name +
                                 " * element#" + std::to_string(cur));
      }
      seen.emplace(std::move(key), static_cast<int>(gs.elements.size()));
      frontier.push_back(static_cast<int>(gs.elements.size()));
      gs.elements.push_back(std::move(next));
    }
  }

  std::sort(gs.elements.begin(), gs.elements.end(), [](const GateElement& a, const GateElement& b) {
    return quantized_key(a.ptm) < quantized_key(b.ptm);
  });
  return gs;
}

Mat trivial_projector(const GateSet& gs) {
  Mat p = Mat::Zero(gs.basis_size(), gs.basis_size());
  for (const auto& el : gs.elements) p += el.ptm;
  return p / gs.order();
}

Mat trivial_projector_product(const GateSet& gs, const std::vector<int>& sector_indices) {
  const int n = gs.basis_size();
  Mat psec = Mat::Zero(n, n);
  for (int i : sector_indices) psec(i, i) = 1.0;
  Mat acc = Mat::Zero(n * n, n * n);
  for (const auto& el : gs.elements) {
    Mat ri = Mat::Zero(n, n);
    for (int r : sector_indices)
      for (int c : sector_indices) ri(r, c) = el.ptm(r, c);
    // kron(ri, R) accumulated; ri is sector-sparse so iterate its support.
    for (int r : sector_indices)
      for (int c : sector_indices) {
        const double w = ri(r, c);
        if (w == 0.0) continue;
        acc.block(n * r, n * c, n, n) += w * el.ptm;
      }
  }
  return acc / gs.order();
}

int multiplicity(const GateSet& gs, const std::vector<double>& irrep_character) {
  if (static_cast<int>(irrep_character.size()) != gs.order())
    throw std::invalid_argument("multiplicity: character vector length != |G|");
  double a = 0.0;
  for (int i = 0; i < gs.order(); ++i) a += gs.elements[i].ptm.trace() * irrep_character[i];
  a /= gs.order();
  const double rounded = std::round(a);
  if (std::abs(a - rounded) > 1e-6) {
    std::ostringstream msg;
    msg << "multiplicity: non-integral result " << a << " (wrong character table?)";
    throw std::runtime_error(msg.str());
  }
  return static_cast<int>(rounded);
}

TwirlResult twirl(const GateSet& gs, const Mat& channel) {
  const int n = gs.basis_size();
  if (channel.rows() != n || channel.cols() != n)
    throw std::invalid_argument("twirl: channel dimension mismatch");
  TwirlResult out;
  out.channel = Mat::Zero(n, n);
  for (const auto& el : gs.elements)
    out.channel += el.ptm * channel * el.ptm.transpose();
  out.channel /= gs.order();
  for (const auto& s : gs.sectors) {
    SectorDecay d;
    d.label = s.label;
    d.lambdas = Mat::Zero(s.multiplicity(), s.multiplicity());
    for (int k = 0; k < s.multiplicity(); ++k)
      for (int kp = 0; kp < s.multiplicity(); ++kp)
        d.lambdas(k, kp) = (s.connector(kp, k) * channel).trace() / s.dim();
    out.decays.push_back(std::move(d));
  }
  return out;
}

void validate_sectors(const GateSet& gs) {
  const int n = gs.basis_size();
  int total = 0;
  Mat sum_proj = Mat::Zero(n, n);
  for (const auto& s : gs.sectors) {
    total += s.dim() * s.multiplicity();
    sum_proj += s.projector();
    std::vector<Mat> rep0;
    for (int k = 0; k < s.multiplicity(); ++k) {
      const Mat& v = s.copies[k];
      if ((v.transpose() * v - Mat::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff() > 1e-9)
        throw std::runtime_error(gs.name + "/" + s.label + ": copy basis not orthonormal");
      const Mat p = s.copy_projector(k);
      if ((p * p - p).cwiseAbs().maxCoeff() > 1e-9)
        throw std::runtime_error(gs.name + "/" + s.label + ": projector not idempotent");
      if ((p - p.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::runtime_error(gs.name + "/" + s.label + ": projector not symmetric");
      for (size_t gi = 0; gi < gs.elements.size(); ++gi) {
        const Mat& r = gs.elements[gi].ptm;
        if ((r * p - p * r).cwiseAbs().maxCoeff() > 1e-9)
          throw std::runtime_error(gs.name + "/" + s.label + ": copy subspace not invariant");
        if (s.multiplicity() > 1) {
          const Mat blk = v.transpose() * r * v;
          if (k == 0) {
            rep0.push_back(blk);
          } else if ((blk - rep0[gi]).cwiseAbs().maxCoeff() > 1e-9) {
            throw std::runtime_error(gs.name + "/" + s.label + ": copy bases not matched");
          }
        }
      }
    }
  }
  if (total != n)
    throw std::runtime_error(gs.name + ": sector dims sum to " + std::to_string(total) +
                             ", expected " + std::to_string(n));
  if ((sum_proj - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::runtime_error(gs.name + ": sector projectors do not resolve the identity");
  if (!gs.sectors_are_irreps) return;
  // character orthonormality: sectors of an irrep catalog carry inequivalent
  // irreps, so <chi_i, chi_j> = delta_ij on single copies.
  for (size_t i = 0; i < gs.sectors.size(); ++i) {
    for (size_t j = i; j < gs.sectors.size(); ++j) {
      double ip = 0.0;
      const Mat& vi = gs.sectors[i].copies[0];
      const Mat& vj = gs.sectors[j].copies[0];
      for (const auto& el : gs.elements)
        ip += (vi.transpose() * el.ptm * vi).trace() * (vj.transpose() * el.ptm * vj).trace();
      ip /= gs.order();
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - expect) > 1e-9)
        throw std::runtime_error(gs.name + ": sector characters '" + gs.sectors[i].label +
                                 "'/'" + gs.sectors[j].label + "' not orthonormal");
    }
  }
}

}  // namespace gss
