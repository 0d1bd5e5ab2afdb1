#include "gss/pipelines.hpp"

#include <stdexcept>

#include "gss/parallel.hpp"

namespace gss {

namespace {

int find_cnot_element(const GateSet& gs) {
  const Mat cnot = build_channel(NoiseSpec::cnot_error());
  for (int i = 0; i < gs.order(); ++i)
    if ((gs.elements[static_cast<size_t>(i)].ptm - cnot).cwiseAbs().maxCoeff() < 1e-9) return i;
  throw std::runtime_error("gate set '" + gs.name + "' does not contain CNOT");
}


}  // namespace

DecayFit fit_probe(const ShadowDataset& ds, const GateSet& gs, const ProbeConfig& probe,
                   const Measurement& meas, EstimatorKind est, DecayModelKind model,
                   int mom_groups) {
  const SequenceFunctionEstimate e =
      estimate_sequence_function(ds, gs, probe, meas, est, mom_groups);
  return fit_decay(e.m, e.k, model);
}

InterleavedBenchmarkResult run_interleaved_benchmark(const InterleavedBenchmarkConfig& cfg) {
  const GateSet& gs = gate_set_by_name(cfg.gate_set);
  const Measurement& meas =
      cfg.gate_set == "g1" ? measurement_mixed_zx() : measurement_z_basis();
  const std::vector<double> probs =
      cfg.pauli_probs.empty() ? NoiseSpec::weight1_pauli(0.99).pauli_probs : cfg.pauli_probs;
  const NoiseSpec spec = NoiseSpec::per_cnot(probs, cfg.rzz_theta);
  const NoisyGateSet ng = assign_noise(gs, spec);
  const int target = find_cnot_element(gs);

  InterleavedBenchmarkResult out;
  // exact F(Lambda_U, I): the CNOT carries Lambda_1 = R_zz o Pauli
  const Mat lambda_u = ng.noise_for(target);
  out.exact_target_fidelity = (lambda_u.trace() + 4.0) / (4.0 * 5.0);

  const std::vector<std::string> sectors =
      cfg.gate_set == "g1" ? std::vector<std::string>{"p1", "p2"} : std::vector<std::string>{"p1"};
  std::vector<int> dims;
  for (const auto& s : sectors) dims.push_back(gs.sector(s).dim() * gs.sector(s).multiplicity());

  for (int pass = 0; pass < 2; ++pass) {
    const bool interleaved = pass == 1;
    SequencePlan plan;
    plan.lengths = cfg.lengths;
    plan.reps_per_length = cfg.reps_per_length;
    plan.seed = cfg.seed + (interleaved ? 1 : 0);
    if (interleaved) {
      plan.mode = SequencePlan::Mode::interleaved;
      plan.interleaved_target = target;
    }
    const ShadowDataset ds = run_experiment(plan, ng, meas);
    std::vector<double> lambdas;
    for (const auto& s : sectors) {
      const ProbeConfig probe = interleaved ? interleaved_probe(gs, s, target, meas)
                                            : sector_probe(gs, s, meas);
      lambdas.push_back(
          fit_probe(ds, gs, probe, meas, cfg.estimator, DecayModelKind::single).lambda());
    }
    const double f = fidelity_from_decays(dims, lambdas, 4);
    if (interleaved) {
      out.f_int = f;
      out.lambdas_int = lambdas;
    } else {
      out.f_sta = f;
      out.lambdas_sta = lambdas;
    }
  }
  out.estimate = interleaved_estimate(out.f_sta, out.f_int, 4);
  return out;
}

SimultaneousDecays exact_simultaneous_decays(const Mat& channel) {
  const GateSet& gs = gate_set_c1xc1();
  SimultaneousDecays d;
  d.l_1g2 = (gs.sector("p1").projector() * channel).trace() / 3.0;
  d.l_2g1 = (gs.sector("p2").projector() * channel).trace() / 3.0;
  d.l_12 = (gs.sector("p3").projector() * channel).trace() / 9.0;
  return d;
}

SimultaneousDecays estimate_simultaneous_decays(const CorrelatedConfig& cfg) {
  const GateSet& gs = gate_set_c1xc1();
  const Measurement& meas = measurement_by_name(cfg.measurement);
  const NoisyGateSet ng = assign_noise(gs, cfg.noise);
  SequencePlan plan;
  plan.lengths = cfg.lengths;
  plan.reps_per_length = cfg.reps_per_length;
  plan.seed = cfg.seed;
  const ShadowDataset ds = run_experiment(plan, ng, meas);

  SimultaneousDecays out;
  const std::vector<std::pair<std::string, std::pair<double*, double*>>> jobs = {
      {"p1", {&out.l_1g2, &out.sig_1g2}},
      {"p2", {&out.l_2g1, &out.sig_2g1}},
      {"p3", {&out.l_12, &out.sig_12}}};
  for (const auto& [label, dst] : jobs) {
    const DecayFit fit = fit_probe(ds, gs, sector_probe(gs, label, meas), meas, cfg.estimator,
                                   DecayModelKind::single, 0);
    *dst.first = fit.lambda();
    *dst.second = fit.lambda_sigma();
  }
  return out;
}

EpsilonRow epsilon_row(const std::string& model_name, const CorrelatedConfig& cfg) {
  EpsilonRow row;
  row.model = model_name;
  const Mat channel = build_channel(cfg.noise);
  const SimultaneousDecays ex = exact_simultaneous_decays(channel);
  row.exact = epsilon_amplitudes(ex.l_1g2, ex.l_2g1, ex.l_12);

  const SimultaneousDecays est = estimate_simultaneous_decays(cfg);
  row.estimated = epsilon_amplitudes(est.l_1g2, est.l_2g1, est.l_12);

  // forward-interval propagation: re-invert at the 2-sigma corners
  double lo1 = row.estimated.eps1, hi1 = lo1;
  double lo2 = row.estimated.eps2, hi2 = lo2;
  double lo3 = row.estimated.eps3, hi3 = lo3;
  for (int mask = 0; mask < 8; ++mask) {
    const double a = est.l_1g2 + ((mask & 1) ? 2 : -2) * est.sig_1g2;
    const double b = est.l_2g1 + ((mask & 2) ? 2 : -2) * est.sig_2g1;
    const double c = est.l_12 + ((mask & 4) ? 2 : -2) * est.sig_12;
    const EpsilonAmplitudes e = epsilon_amplitudes(a, b, c);
    if (!e.solved && !std::isfinite(e.residual)) continue;
    lo1 = std::min(lo1, e.eps1);
    hi1 = std::max(hi1, e.eps1);
    lo2 = std::min(lo2, e.eps2);
    hi2 = std::max(hi2, e.eps2);
    lo3 = std::min(lo3, e.eps3);
    hi3 = std::max(hi3, e.eps3);
  }
  row.err1 = std::max(hi1 - row.estimated.eps1, row.estimated.eps1 - lo1);
  row.err2 = std::max(hi2 - row.estimated.eps2, row.estimated.eps2 - lo2);
  row.err3 = std::max(hi3 - row.estimated.eps3, row.estimated.eps3 - lo3);
  return row;
}

MarginalSet exact_marginals(const Mat& channel) {
  MarginalSet ms;
  auto block = [&channel](const std::vector<int>& idx) {
    Mat b(idx.size(), idx.size());
    for (size_t r = 0; r < idx.size(); ++r)
      for (size_t c = 0; c < idx.size(); ++c)
        b(static_cast<int>(r), static_cast<int>(c)) = channel(idx[r], idx[c]);
    return b;
  };
  ms.block1 = block({4, 5, 6});
  ms.block2 = block({1, 2, 3});
  ms.block3 = block({7, 8, 9, 10, 11, 12, 13, 14, 15});
  return ms;
}

MarginalReport run_marginal_reconstruction(const CorrelatedConfig& cfg) {
  const GateSet& gs = gate_set_c1xc1();
  const Measurement& meas = measurement_by_name(cfg.measurement);
  const NoisyGateSet ng = assign_noise(gs, cfg.noise);
  SequencePlan plan;
  plan.lengths = cfg.lengths;
  plan.reps_per_length = cfg.reps_per_length;
  plan.seed = cfg.seed;
  const ShadowDataset ds = run_experiment(plan, ng, meas);

  MarginalReport rep;
  const Mat channel = build_channel(cfg.noise);
  rep.exact = exact_marginals(channel);

  Mat* blocks[3] = {&rep.estimated.block1, &rep.estimated.block2, &rep.estimated.block3};
  for (int sector = 1; sector <= 3; ++sector) {
    const auto elements = marginal_probe_elements(gs, sector);
    const std::string label = "p" + std::to_string(sector);
    std::vector<double> decays(elements.size());
    std::vector<ProbeConfig> probes;
    probes.reserve(elements.size());
    for (int el : elements) probes.push_back(element_probe(gs, label, el));
    parallel_for(elements.size(), [&](size_t i) {
      const SequenceFunctionEstimate e =
          estimate_sequence_function(ds, gs, probes[i], meas, cfg.estimator);
      decays[i] = fit_decay(e.m, e.k, DecayModelKind::single).lambda();
    });
    *blocks[static_cast<size_t>(sector - 1)] = reconstruct_marginal(gs, sector, decays);
  }
  rep.estimated_crosstalk = crosstalk_matrices(rep.estimated);
  rep.exact_crosstalk = crosstalk_matrices(rep.exact);
  rep.pauli_rates = pauli_error_rates(rep.estimated, &rep.negativity);
  rep.exact_pauli_rates = pauli_error_rates(rep.exact);
  return rep;
}

std::vector<LeakagePoint> run_leakage_benchmark(const LeakageBenchmarkConfig& cfg) {
  const GateSet& gs = gate_set_leakage();
  const Measurement& meas = measurement_leakage();
  std::vector<LeakagePoint> out;
  for (size_t gi = 0; gi < cfg.gammas.size(); ++gi) {
    const double gamma = cfg.gammas[gi];
    NoiseSpec spec = NoiseSpec::composite_of(
        {NoiseSpec::weight1_pauli(cfg.pauli_identity), NoiseSpec::amplitude_damping(gamma, gamma)});
    const NoisyGateSet ng = assign_noise(gs, spec);
    LeakagePoint pt;
    pt.gamma = gamma;
    pt.exact_leakage = leakage_of_channel(ng.uniform_noise).first;

    SequencePlan plan;
    plan.lengths = cfg.lengths;
    plan.reps_per_length = cfg.reps_per_length;
    plan.seed = cfg.seed + gi;
    const ShadowDataset ds = run_experiment(plan, ng, meas);

    for (const char* which : {"p0", "p0_2"}) {
      const ProbeConfig probe = leakage_probe(which);
      const DecayFit fit =
          fit_probe(ds, gs, probe, meas, cfg.estimator, DecayModelKind::offset_m);
      const LeakageRates rates = leakage_rates(fit, which);
      if (std::string(which) == "p0")
        pt.model1 = rates;
      else
        pt.model2 = rates;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace gss
