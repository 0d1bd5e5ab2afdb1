#pragma once

#include <string>
#include <vector>

#include "gss/estimation.hpp"

namespace gss {

enum class CiMethod { percentile, bca, normal, fit_cov_2sigma };

std::string ci_method_name(CiMethod m);
CiMethod ci_method_by_name(const std::string& name);

struct ConfidenceInterval {
  CiMethod method = CiMethod::percentile;
  double level = 0.9;
  double lower = 0.0;
  double upper = 0.0;
  double point = 0.0;
  bool reliable = true;  // false when > 5% of replicate fits failed
};

struct BootstrapOptions {
  int replicates = 10000;
  double level = 0.90;
  uint64_t seed = 1;
  EstimatorKind estimator = EstimatorKind::mean;
  int mom_groups = 0;
  DecayModelKind model = DecayModelKind::single;
};

// Shared bootstrap state: lambda replicates plus the BCa ingredients, so the
// four interval methods come from one resampling pass. Replicate resampling
// draws K records with replacement at every length independently; refits are
// seeded from the original fit.
struct BootstrapResult {
  double lambda_hat = 0.0;
  double fit_sigma = 0.0;      // sqrt(cov_ll) of the original fit
  std::vector<double> lambdas;  // successful replicate estimates
  double z0 = 0.0;              // BCa bias correction
  double accel = 0.0;           // BCa acceleration (record-level jackknife)
  double failure_fraction = 0.0;
};

BootstrapResult bootstrap_lambdas(const ShadowDataset& ds, const GateSet& gs,
                                  const ProbeConfig& probe, const Measurement& meas,
                                  const BootstrapOptions& opts);

ConfidenceInterval confidence_interval(const BootstrapResult& b, CiMethod method, double level);

// All four methods from one resampling pass.
std::vector<ConfidenceInterval> bootstrap_ci(const ShadowDataset& ds, const GateSet& gs,
                                             const ProbeConfig& probe, const Measurement& meas,
                                             const BootstrapOptions& opts,
                                             const std::vector<CiMethod>& methods);

struct CoverageCell {
  int sample_size = 0;
  EstimatorKind estimator = EstimatorKind::mean;
  CiMethod method = CiMethod::percentile;
  double coverage = 0.0;
  int trials = 0;
};

struct CoverageConfig {
  std::string gate_set = "c2";
  std::string sector = "p1";
  std::string measurement = "z_basis";
  NoiseSpec noise = NoiseSpec::weight1_pauli(0.99);
  std::vector<int> lengths = {1, 3, 5, 8, 12, 16, 20, 25};
  std::vector<int> sample_sizes = {5, 10, 20, 50, 100};
  std::vector<EstimatorKind> estimators = {EstimatorKind::mean, EstimatorKind::median_of_means};
  std::vector<CiMethod> methods = {CiMethod::percentile, CiMethod::bca, CiMethod::normal,
                                   CiMethod::fit_cov_2sigma};
  int trials = 100;
  int bootstrap_replicates = 1000;
  double level = 0.90;
  uint64_t master_seed = 7;
};

// Fraction of trials whose interval contains the twirl-oracle ground truth,
// per (K, estimator, method) cell. Deterministic under the master seed.
std::vector<CoverageCell> coverage_study(const CoverageConfig& cfg);

// Ground-truth decay of the configured cell: Tr(P_i Lambda)/Tr(P_i).
double coverage_ground_truth(const CoverageConfig& cfg);

// Standard normal quantile (Acklam approximation polished by one Newton
// step; |error| < 1e-12 over (1e-300, 1-1e-300)).
double normal_quantile(double p);
double normal_cdf(double x);

}  // namespace gss
