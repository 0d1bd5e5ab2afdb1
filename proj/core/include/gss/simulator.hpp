#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gss/measurement.hpp"
#include "gss/noise.hpp"
#include "gss/rng.hpp"

namespace gss {

struct SequencePlan {
  enum class Mode { random, interleaved };
  std::vector<int> lengths;
  int reps_per_length = 1;
  Mode mode = Mode::random;
  int interleaved_target = -1;  // element index into the gate set
  uint64_t seed = 0;
  int shots_per_record = 1;

  void validate(const GateSet& gs) const;
};

struct Record {
  int m = 0;
  std::vector<int> seq;
  int outcome = 0;  // index into Measurement::labels
  int rep = 0;
};

struct ShadowDataset {
  std::string gate_set;
  std::string gate_set_hash;
  std::string config_hash;
  std::string measurement;
  uint64_t seed = 0;
  SequencePlan plan;
  std::vector<std::string> outcome_labels;
  std::vector<Record> records;

  // Records at a fixed length, in replicate order.
  std::vector<const Record*> at_length(int m) const;
  std::vector<int> lengths() const;
};

// Uniform i.i.d. gate indices from per-record streams; interleaved mode still
// stores only the random gates.
std::vector<std::vector<int>> sample_sequences(const SequencePlan& plan, const GateSet& gs);

// p(x) = <<E_x~| prod_j Lambda(g_j) R(g_j) |rho~>> evaluated right to left.
// Interleaved mode applies the noisy target R(U) R(Lambda_U) between
// consecutive random gates. Probabilities within 1e-9 of [0,1] are clipped;
// anything worse (or a sum off 1 by > 1e-9) throws.
Vec outcome_distribution(const std::vector<int>& seq, const NoisyGateSet& ng,
                         const Measurement& meas, SequencePlan::Mode mode,
                         int interleaved_target = -1);

ShadowDataset run_experiment(const SequencePlan& plan, const NoisyGateSet& ng,
                             const Measurement& meas);

// One outcome draw from a probability vector, via inverse CDF on the vector
// quantized at 1e-15 (bit-exact across platforms for identical inputs).
int sample_outcome(const Vec& probs, Rng& rng);

void write_jsonl(const ShadowDataset& ds, const std::string& path);
ShadowDataset read_jsonl(const std::string& path);

}  // namespace gss
