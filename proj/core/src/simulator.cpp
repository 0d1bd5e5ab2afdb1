#include "gss/simulator.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gss/parallel.hpp"
#include "gss/rng.hpp"

namespace gss {

void SequencePlan::validate(const GateSet& gs) const {
  for (int m : lengths)
    if (m < 1) throw std::invalid_argument("sequence plan: lengths must be >= 1");
  if (reps_per_length < 1) throw std::invalid_argument("sequence plan: reps_per_length must be >= 1");
  if (shots_per_record < 1) throw std::invalid_argument("sequence plan: shots_per_record must be >= 1");
  if (mode == Mode::interleaved &&
      (interleaved_target < 0 || interleaved_target >= gs.order()))
    throw std::invalid_argument("sequence plan: interleaved target is not a gate-set member");
}

std::vector<const Record*> ShadowDataset::at_length(int m) const {
  std::vector<const Record*> out;
  for (const Record& r : records)
    if (r.m == m) out.push_back(&r);
  return out;
}

std::vector<int> ShadowDataset::lengths() const {
  std::set<int> ms;
  for (const Record& r : records) ms.insert(r.m);
  return {ms.begin(), ms.end()};
}

std::vector<std::vector<int>> sample_sequences(const SequencePlan& plan, const GateSet& gs) {
  plan.validate(gs);
  std::vector<std::vector<int>> out;
  uint64_t index = 0;
  for (int m : plan.lengths) {
    for (int k = 0; k < plan.reps_per_length; ++k, ++index) {
      Rng rng = Rng::stream(plan.seed, index);
      std::vector<int> seq(static_cast<size_t>(m));
      for (int j = 0; j < m; ++j)
        seq[static_cast<size_t>(j)] = static_cast<int>(rng.bounded(static_cast<uint64_t>(gs.order())));
      out.push_back(std::move(seq));
    }
  }
  return out;
}

Vec outcome_distribution(const std::vector<int>& seq, const NoisyGateSet& ng,
                         const Measurement& meas, SequencePlan::Mode mode,
                         int interleaved_target) {
  const GateSet& gs = *ng.base;
  Vec v = ng.prep_noise * meas.rho;
  Mat target_step;
  if (mode == SequencePlan::Mode::interleaved) {
    // noisy target gate R(U~) = R(U) R(Lambda_U); target carries its own
    // per-element noise channel
    target_step = gs.elements[static_cast<size_t>(interleaved_target)].ptm *
                  ng.noise_for(interleaved_target);
  }
  for (size_t j = 0; j < seq.size(); ++j) {
    const int g = seq[j];
    if (g < 0 || g >= gs.order()) throw std::invalid_argument("outcome_distribution: bad gate index");
    v = ng.noise_for(g) * (gs.elements[static_cast<size_t>(g)].ptm * v);
    if (mode == SequencePlan::Mode::interleaved && j + 1 < seq.size()) v = target_step * v;
  }
  Vec p(meas.outcomes());
  double sum = 0.0;
  for (int x = 0; x < meas.outcomes(); ++x) {
    double px = (ng.meas_noise.transpose() * meas.povm[static_cast<size_t>(x)]).dot(v);
    if (px < -1e-9 || px > 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "outcome_distribution: p(" << meas.labels[static_cast<size_t>(x)] << ") = " << px
          << " outside [0,1] (model inconsistency)";
      throw std::runtime_error(msg.str());
    }
    px = std::min(1.0, std::max(0.0, px));
    p(x) = px;
    sum += px;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::runtime_error("outcome_distribution: probabilities sum to " + std::to_string(sum));
  return p;
}

int sample_outcome(const Vec& probs, Rng& rng) {
  // quantize at 1e-15 and sample the exact rational distribution
  std::vector<uint64_t> q(static_cast<size_t>(probs.size()));
  uint64_t total = 0;
  for (int i = 0; i < probs.size(); ++i) {
    q[static_cast<size_t>(i)] = static_cast<uint64_t>(llround(probs(i) * 1e15));
    total += q[static_cast<size_t>(i)];
  }
  if (total == 0) throw std::runtime_error("sample_outcome: zero mass");
  uint64_t r = rng.bounded(total);
  for (size_t i = 0; i < q.size(); ++i) {
    if (r < q[i]) return static_cast<int>(i);
    r -= q[i];
  }
  return static_cast<int>(q.size()) - 1;
}

ShadowDataset run_experiment(const SequencePlan& plan, const NoisyGateSet& ng,
                             const Measurement& meas) {
  const GateSet& gs = *ng.base;
  plan.validate(gs);
  ShadowDataset ds;
  ds.gate_set = gs.name;
  ds.gate_set_hash = gs.content_hash();
  ds.measurement = meas.name;
  ds.seed = plan.seed;
  ds.plan = plan;
  ds.outcome_labels = meas.labels;

  struct Slot {
    int m, rep;
  };
  std::vector<Slot> slots;
  for (int m : plan.lengths)
    for (int k = 0; k < plan.reps_per_length; ++k) slots.push_back({m, k});
  ds.records.resize(slots.size() * static_cast<size_t>(plan.shots_per_record));

  parallel_for(slots.size(), [&](size_t i) {
    Rng rng = Rng::stream(plan.seed, i);
    std::vector<int> seq(static_cast<size_t>(slots[i].m));
    for (int j = 0; j < slots[i].m; ++j)
      seq[static_cast<size_t>(j)] = static_cast<int>(rng.bounded(static_cast<uint64_t>(gs.order())));
    const Vec p = outcome_distribution(seq, ng, meas, plan.mode, plan.interleaved_target);
    for (int s = 0; s < plan.shots_per_record; ++s) {
      Record rec;
      rec.m = slots[i].m;
      rec.seq = seq;
      rec.rep = slots[i].rep * plan.shots_per_record + s;
      rec.outcome = sample_outcome(p, rng);
      ds.records[i * static_cast<size_t>(plan.shots_per_record) + static_cast<size_t>(s)] =
          std::move(rec);
    }
  });
  return ds;
}

}  // namespace gss
