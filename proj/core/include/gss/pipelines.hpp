#pragma once

#include <string>
#include <vector>

#include "gss/marginals.hpp"
#include "gss/stats.hpp"

namespace gss {

// Interleaved target-gate benchmark (standard + interleaved runs on one gate
// set, CNOT target).
struct InterleavedBenchmarkConfig {
  std::string gate_set = "g1";  // "c2" or "g1"
  std::vector<int> lengths = {1, 2, 3, 4, 6, 8, 10, 13, 16, 20};
  int reps_per_length = 150;
  EstimatorKind estimator = EstimatorKind::mean;
  std::vector<double> pauli_probs;  // defaults to weight1_pauli(0.99)
  double rzz_theta = 0.1;
  uint64_t seed = 11;
};

struct InterleavedBenchmarkResult {
  double f_sta = 0.0;
  double f_int = 0.0;
  InterleavedEstimate estimate;
  double exact_target_fidelity = 0.0;  // F(Lambda_U, I) of the configured model
  std::vector<double> lambdas_sta, lambdas_int;
};

InterleavedBenchmarkResult run_interleaved_benchmark(const InterleavedBenchmarkConfig& cfg);

// Simultaneous-RB decays (lambda_{1|2}, lambda_{2|1}, lambda_{12}) estimated
// from one dataset, plus their fit sigmas.
struct SimultaneousDecays {
  double l_1g2 = 0.0, l_2g1 = 0.0, l_12 = 0.0;
  double sig_1g2 = 0.0, sig_2g1 = 0.0, sig_12 = 0.0;
};

struct CorrelatedConfig {
  NoiseSpec noise = NoiseSpec::rotation(NoiseSpec::Kind::rxx, 0.5);
  std::string measurement = "z_basis";
  std::vector<int> lengths = {1, 2, 3, 4, 5, 6, 8, 10, 12, 15};
  int reps_per_length = 15000;
  EstimatorKind estimator = EstimatorKind::median_of_means;
  uint64_t seed = 23;
};

SimultaneousDecays estimate_simultaneous_decays(const CorrelatedConfig& cfg);

// Exact decays of a channel from the twirl formulas.
SimultaneousDecays exact_simultaneous_decays(const Mat& channel);

struct EpsilonRow {
  std::string model;
  EpsilonAmplitudes estimated;
  EpsilonAmplitudes exact;
  // forward-interval propagation of +-2 sigma on the decays
  double err1 = 0.0, err2 = 0.0, err3 = 0.0;
};

EpsilonRow epsilon_row(const std::string& model_name, const CorrelatedConfig& cfg);

// Unital-marginal reconstruction from one dataset: all probe decays for the
// three sectors, reconstructed blocks, crosstalk matrices, Pauli rates.
struct MarginalReport {
  MarginalSet estimated;
  MarginalSet exact;
  CrosstalkMatrices estimated_crosstalk;
  CrosstalkMatrices exact_crosstalk;
  Vec pauli_rates;
  Vec exact_pauli_rates;
  double negativity = 0.0;
};

MarginalReport run_marginal_reconstruction(const CorrelatedConfig& cfg);
MarginalSet exact_marginals(const Mat& channel);

// Leakage benchmark over damping strengths: both leakage fitting models.
struct LeakageBenchmarkConfig {
  std::vector<double> gammas = {0.002, 0.005, 0.01, 0.02, 0.05};
  double pauli_identity = 0.98;
  std::vector<int> lengths = {1, 2, 3, 4, 6, 8, 10, 13, 16, 20};
  int reps_per_length = 1000;
  EstimatorKind estimator = EstimatorKind::mean;
  uint64_t seed = 31;
};

struct LeakagePoint {
  double gamma = 0.0;
  double exact_leakage = 0.0;
  LeakageRates model1;  // probe p0
  LeakageRates model2;  // probe p0_2
};

std::vector<LeakagePoint> run_leakage_benchmark(const LeakageBenchmarkConfig& cfg);

// Fit one probe of a dataset; model defaults to `single` for sector probes.
DecayFit fit_probe(const ShadowDataset& ds, const GateSet& gs, const ProbeConfig& probe,
                   const Measurement& meas, EstimatorKind est, DecayModelKind model,
                   int mom_groups = 0);

}  // namespace gss
