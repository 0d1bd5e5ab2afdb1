#pragma once

#include <string>
#include <vector>

#include "gss/fit.hpp"
#include "gss/measurement.hpp"
#include "gss/simulator.hpp"

namespace gss {

// Post-processing probe: the sequence correlation function evaluates
//   f_A = c0 * <<E_x| R_i(g_m) A R_i(g_{m-1}) A ... A R_i(g_1) |rho>>
// with R_i(g) the ideal-gate block on `sector` (noise never enters).
//
// Probes whose chain collapses to a function of the outcome alone (the
// leakage probes) instead carry per-outcome weights.
struct ProbeConfig {
  std::string name;
  std::vector<int> sector;  // tau indices of the block R_i(g)
  Mat probe;                // block-restricted, sector.size() square
  double c0 = 1.0;
  bool outcome_weights_mode = false;
  Vec outcome_weights;
};

enum class EstimatorKind { mean, median_of_means };

struct SequenceFunctionEstimate {
  std::vector<double> m;
  std::vector<double> k;
  std::vector<double> std_err;
  std::vector<int> count;
  EstimatorKind estimator = EstimatorKind::mean;
  int groups = 0;  // MoM group count actually used
};

// c0 = 1 / (noiseless k_A(1) computed with c0 = 1). Throws when the probe has
// no overlap with the measurement (k_A(1) = 0).
double normalization_constant(const GateSet& gs, const std::vector<int>& sector,
                              const Mat& probe_block, const Measurement& meas);

// Catalog probes. sector_probe: A = projector onto the sector (identity
// block). interleaved_probe: A = P_i R(U)^T P_i for the ideal target PTM.
// element_probe: A = P_i R(C) P_i for a group element C (unital-marginal
// reconstruction; c0 left at the sector normalization).
ProbeConfig sector_probe(const GateSet& gs, const std::string& sector_label,
                         const Measurement& meas);
ProbeConfig interleaved_probe(const GateSet& gs, const std::string& sector_label,
                              int target_element, const Measurement& meas);
ProbeConfig element_probe(const GateSet& gs, const std::string& sector_label, int element);
// Leakage probes (outcome-weight mode): "p0" -> weights (1, 0); "p0_2" ->
// weights (1, -1).
ProbeConfig leakage_probe(const std::string& which);

// Precomputes per-element sector blocks once; f() is then cheap per record.
class CorrelationEvaluator {
 public:
  CorrelationEvaluator(const GateSet& gs, const ProbeConfig& probe, const Measurement& meas);
  double f(const Record& rec) const;

 private:
  const ProbeConfig probe_;
  std::vector<Mat> blocks_;
  std::vector<Vec> povm_restricted_;
  Vec rho_restricted_;
};

// Mean or median-of-means of f over the K records at each length. MoM
// partitions the K values (dataset order) into `groups` consecutive chunks
// (default ceil(sqrt(K))); even group counts take the average of the two
// middle group means. Throws if K < groups.
SequenceFunctionEstimate estimate_sequence_function(const ShadowDataset& ds, const GateSet& gs,
                                                    const ProbeConfig& probe,
                                                    const Measurement& meas, EstimatorKind est,
                                                    int groups = 0);

// Exact k_A(m) for uniform gate noise, via the product-space construction
// k = c0 sum_x Tr[Omega (P_triv (A x R(Lambda)) P_triv)^(m-1)]. Interleaved
// mode substitutes R(Lambda~) = R(U) R(Lambda_U) R(Lambda). Outcome-weight
// probes use k = sum_x w_x <<E_x~|(R(Lambda) P_triv)^m|rho~>>. Throws for
// gate-dependent noise.
std::vector<double> analytic_sequence_function(const GateSet& gs, const ProbeConfig& probe,
                                               const NoisyGateSet& ng, const Measurement& meas,
                                               const std::vector<int>& ms,
                                               int interleaved_target = -1);

// Tr(E) = 1 + sum_i Tr(P_i) lambda_i, then F = (Tr + d)/(d(d+1)).
double fidelity_from_decays(const std::vector<int>& sector_dims, const std::vector<double>& lambdas,
                            int d);
// C1xI single-sector form: F1 = lambda1 + (1 - lambda1)/d1.
double fidelity_single_qubit_sector(double lambda1, int d1 = 2);

struct InterleavedEstimate {
  double point = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  bool degenerate = false;  // no real bound solution
};

// Point estimate 1 - ((d-1)/d) [1 - (d F_int - 1)/(d F_sta - 1)] plus the
// chi00-inequality bounds, clipped to [0, 1].
InterleavedEstimate interleaved_estimate(double f_sta, double f_int, int d);

// delta r_{1|2} = |lambda1 - lambda_{1|2}| (d1-1)/d1 and
// delta lambda = lambda12 - lambda_{1|2} lambda_{2|1}.
std::pair<double, double> crosstalk_scalars(double lambda1, double lambda_1g2, double lambda_2g1,
                                            double lambda_12, int d1 = 2);

struct LeakageRates {
  double leakage = 0.0;
  double seepage = 0.0;
  double clip_distance = 0.0;  // how far raw values sat outside [0,1]
  double leakage_sigma = 0.0;  // delta-method from the fit covariance
};

// Invert the leakage fitting models. offset_m fits only:
//   p0 model   (weights 1,0):  b0 = S/(S+L),     lambda = 1-L-S
//   p0_2 model (weights 1,-1): b0 = (S-L)/(S+L), lambda = 1-L-S
LeakageRates leakage_rates(const DecayFit& fit, const std::string& probe_name);

// L and S of a noise channel per their PTM definition (d1 = d2 = 2).
std::pair<double, double> leakage_of_channel(const Mat& noise);

}  // namespace gss
