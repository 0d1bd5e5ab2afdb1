#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gss/config.hpp"
#include "gss/pipelines.hpp"

namespace {

using nlohmann::json;
using namespace gss;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

json sector_json(const IrrepSector& s) {
  json j;
  j["label"] = s.label;
  j["multiplicity"] = s.multiplicity();
  j["dim"] = s.dim();
  json copies = json::array();
  for (int k = 0; k < s.multiplicity(); ++k) {
    if (auto idx = s.basis_indices(k)) {
      copies.push_back(*idx);
    } else {
      copies.push_back(to_row_major(s.copies[static_cast<size_t>(k)]));
    }
  }
  j["indices"] = copies;
  return j;
}

int cmd_generate_group(const std::string& name, const std::string& out_path) {
  const GateSet& gs = gate_set_by_name(name);
  json j;
  j["name"] = gs.name;
  j["order"] = gs.order();
  j["hash"] = gs.content_hash();
  json elements = json::array();
  for (const auto& el : gs.elements)
    elements.push_back({{"ptm", to_row_major(el.ptm)}, {"cnot_cost", el.cnot_cost}});
  j["elements"] = elements;
  json sectors = json::array();
  for (const auto& s : gs.sectors) sectors.push_back(sector_json(s));
  j["sectors"] = sectors;
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot open '" + out_path + "'");
  out << j.dump(2) << "\n";
  std::cout << "wrote " << out_path << " (order " << gs.order() << ", hash " << gs.content_hash()
            << ")\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path, uint64_t seed,
                 bool seed_set) {
  ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
  if (seed_set) {
    cfg.seed = seed;
    cfg.plan.seed = seed;
  }
  const GateSet& gs = gate_set_by_name(cfg.gate_set);
  const Measurement& meas = measurement_by_name(cfg.measurement);
  const NoisyGateSet ng = assign_noise(gs, cfg.noise, cfg.spam);
  ShadowDataset ds = run_experiment(cfg.plan, ng, meas);
  ds.config_hash = cfg.hash();
  write_jsonl(ds, out_path);
  std::cout << "wrote " << out_path << " (" << ds.records.size() << " records, config hash "
            << ds.config_hash << ")\n";
  return 0;
}

ProbeConfig resolve_probe(const GateSet& gs, const Measurement& meas, const std::string& name) {
  if (gs.name == "leakage" && (name == "p0" || name == "p0_2")) return leakage_probe(name);
  if (name.size() > 4 && name.substr(name.size() - 4) == "_int") {
    const std::string sector = name.substr(0, name.size() - 4);
    const Mat cnot = build_channel(NoiseSpec::cnot_error());
    for (int i = 0; i < gs.order(); ++i)
      if ((gs.elements[static_cast<size_t>(i)].ptm - cnot).cwiseAbs().maxCoeff() < 1e-9)
        return interleaved_probe(gs, sector, i, meas);
    throw ConfigError("interleaved probe: gate set has no CNOT element");
  }
  return sector_probe(gs, name, meas);
}

void check_dataset_hash(const ShadowDataset& ds, const GateSet& gs) {
  if (ds.gate_set_hash != gs.content_hash())
    throw ConfigError("dataset gate-set hash " + ds.gate_set_hash +
                      " does not match catalog gate set '" + gs.name + "' (" + gs.content_hash() +
                      "); refusing to post-process");
}

json fit_json(const DecayFit& fit) {
  json j;
  j["model"] = fit.kind == DecayModelKind::single
                   ? "single"
                   : (fit.kind == DecayModelKind::offset ? "offset" : "offset_m");
  j["params"] = std::vector<double>(fit.params.data(), fit.params.data() + fit.params.size());
  j["cov"] = to_row_major(fit.covariance);
  j["residual_norm"] = fit.residual_norm;
  j["converged"] = fit.converged;
  j["degenerate_lambda"] = fit.degenerate_lambda;
  return j;
}

int cmd_postprocess(const std::string& dataset_path, std::vector<std::string> probes,
                    const std::string& estimator, const std::string& model,
                    const std::string& out_path) {
  const ShadowDataset ds = read_jsonl(dataset_path);
  const GateSet& gs = gate_set_by_name(ds.gate_set);
  const Measurement& meas = measurement_by_name(ds.measurement);
  check_dataset_hash(ds, gs);
  const EstimatorKind est =
      estimator == "mom" ? EstimatorKind::median_of_means : EstimatorKind::mean;
  const DecayModelKind kind = fit_model_by_name(model);

  json out;
  out["dataset"] = dataset_path;
  out["config_hash"] = ds.config_hash;
  out["estimator"] = estimator;
  json reports = json::array();
  if (probes.empty()) throw ConfigError("postprocess: at least one --probe required");
  for (const std::string& pname : probes) {
    const ProbeConfig probe = resolve_probe(gs, meas, pname);
    const SequenceFunctionEstimate e = estimate_sequence_function(ds, gs, probe, meas, est);
    json per_m = json::array();
    for (size_t i = 0; i < e.m.size(); ++i)
      per_m.push_back({{"m", e.m[i]}, {"k", e.k[i]}, {"stderr", e.std_err[i]}, {"n", e.count[i]}});
    const DecayFit fit = fit_decay(e.m, e.k, kind);
    json r;
    r["probe"] = pname;
    r["c0"] = probe.c0;
    r["per_m"] = per_m;
    r["fit"] = fit_json(fit);
    reports.push_back(r);
  }
  out["probes"] = reports;
  std::ofstream f(out_path);
  f << out.dump(2) << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_marginals(const std::string& dataset_path, const std::string& estimator,
                  const std::string& out_path) {
  const ShadowDataset ds = read_jsonl(dataset_path);
  if (ds.gate_set != "c1xc1")
    throw ConfigError("marginals: dataset must use the c1xc1 gate set");
  const GateSet& gs = gate_set_c1xc1();
  const Measurement& meas = measurement_by_name(ds.measurement);
  check_dataset_hash(ds, gs);
  const EstimatorKind est =
      estimator == "mom" ? EstimatorKind::median_of_means : EstimatorKind::mean;

  MarginalSet set;
  Mat* blocks[3] = {&set.block1, &set.block2, &set.block3};
  for (int sector = 1; sector <= 3; ++sector) {
    const auto elements = marginal_probe_elements(gs, sector);
    std::vector<double> decays(elements.size());
    for (size_t i = 0; i < elements.size(); ++i) {
      const ProbeConfig probe = element_probe(gs, "p" + std::to_string(sector), elements[i]);
      const SequenceFunctionEstimate e = estimate_sequence_function(ds, gs, probe, meas, est);
      decays[i] = fit_decay(e.m, e.k, DecayModelKind::single).lambda();
    }
    *blocks[static_cast<size_t>(sector - 1)] = reconstruct_marginal(gs, sector, decays);
  }
  const CrosstalkMatrices ct = crosstalk_matrices(set);
  double negativity = 0.0;
  const Vec rates = pauli_error_rates(set, &negativity);
  const EpsilonAmplitudes eps = epsilon_amplitudes(
      set.block1.trace() / 3.0, set.block2.trace() / 3.0, set.block3.trace() / 9.0);

  json out;
  out["blocks"] = {{"lambda1", to_row_major(set.block1)},
                   {"lambda2", to_row_major(set.block2)},
                   {"lambda3", to_row_major(set.block3)}};
  out["deltaR1"] = to_row_major(ct.delta_r1);
  if (ct.r2_valid) out["deltaR2"] = to_row_major(ct.delta_r2);
  out["pauli_rates"] = std::vector<double>(rates.data(), rates.data() + rates.size());
  out["epsilon"] = {eps.eps1, eps.eps2, eps.eps3};
  out["diagnostics"] = {{"negativity", negativity},
                        {"condition_number", ct.condition_number},
                        {"r2_valid", ct.r2_valid}};
  std::ofstream f(out_path);
  f << out.dump(2) << "\n";
  // CSV matrices for plotting
  const std::string csv_path = out_path + ".deltaR2.csv";
  if (ct.r2_valid) {
    std::ofstream csv(csv_path);
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) csv << ct.delta_r2(i, j) << (j == 8 ? '\n' : ',');
    }
  }
  std::cout << "wrote " << out_path << (ct.r2_valid ? " and " + csv_path : "") << "\n";
  return 0;
}

int cmd_bootstrap(const std::string& dataset_path, const std::string& probe_name,
                  const std::string& estimator, const std::string& method_csv, int replicates,
                  double level, uint64_t seed, const std::string& out_path) {
  const ShadowDataset ds = read_jsonl(dataset_path);
  const GateSet& gs = gate_set_by_name(ds.gate_set);
  const Measurement& meas = measurement_by_name(ds.measurement);
  check_dataset_hash(ds, gs);
  const ProbeConfig probe = resolve_probe(gs, meas, probe_name);
  BootstrapOptions opts;
  opts.replicates = replicates;
  opts.level = level;
  opts.seed = seed;
  opts.estimator = estimator == "mom" ? EstimatorKind::median_of_means : EstimatorKind::mean;
  std::vector<CiMethod> methods;
  std::stringstream ss(method_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) methods.push_back(ci_method_by_name(tok));
  const auto cis = bootstrap_ci(ds, gs, probe, meas, opts, methods);
  json out = json::array();
  for (const auto& ci : cis)
    out.push_back({{"method", ci_method_name(ci.method)},
                   {"level", ci.level},
                   {"lower", ci.lower},
                   {"upper", ci.upper},
                   {"point", ci.point},
                   {"reliable", ci.reliable}});
  std::ofstream f(out_path);
  f << out.dump(2) << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_coverage(int trials, int replicates, const std::string& out_path, uint64_t seed) {
  CoverageConfig cfg;
  cfg.trials = trials;
  cfg.bootstrap_replicates = replicates;
  cfg.master_seed = seed;
  const auto cells = coverage_study(cfg);
  std::ofstream f(out_path);
  f << "K,estimator,method,coverage,trials,seed\n";
  for (const auto& c : cells)
    f << c.sample_size << ',' << (c.estimator == EstimatorKind::mean ? "mean" : "mom") << ','
      << ci_method_name(c.method) << ',' << c.coverage << ',' << c.trials << ',' << seed << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

void print_pass_line(std::ostream& os, const std::string& quantity, double value, double truth,
                     double tol, bool pass) {
  os << quantity << ": value=" << value << " truth=" << truth << " tol=" << tol << " "
     << (pass ? "PASS" : "FAIL") << "\n";
}

int cmd_reproduce(const std::string& target, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream report(out_dir + "/" + target + ".txt");
  bool all_pass = true;
  auto row = [&](const std::string& q, double v, double t, double tol) {
    const bool pass = std::abs(v - t) <= tol;
    all_pass &= pass;
    print_pass_line(report, q, v, t, tol, pass);
    print_pass_line(std::cout, q, v, t, tol, pass);
  };

  if (target == "table1") {
    for (const std::string gs_name : {"c2", "g1"}) {
      InterleavedBenchmarkConfig cfg;
      cfg.gate_set = gs_name;
      const auto res = run_interleaved_benchmark(cfg);
      row(gs_name + ".F_est", res.estimate.point, res.exact_target_fidelity, 0.03);
      const bool in_bounds = res.estimate.lower <= res.exact_target_fidelity &&
                             res.exact_target_fidelity <= res.estimate.upper;
      all_pass &= in_bounds;
      report << gs_name << ".bounds=[" << res.estimate.lower << ", " << res.estimate.upper
             << "] contains_truth=" << (in_bounds ? "PASS" : "FAIL") << "\n";
      std::cout << gs_name << ".bounds=[" << res.estimate.lower << ", " << res.estimate.upper
                << "] contains_truth=" << (in_bounds ? "PASS" : "FAIL") << "\n";
    }
  } else if (target == "table2") {
    const std::vector<std::pair<std::string, NoiseSpec>> models = {
        {"rxx", NoiseSpec::rotation(NoiseSpec::Kind::rxx, 0.5)},
        {"ryy", NoiseSpec::rotation(NoiseSpec::Kind::ryy, 0.5)},
        {"rzz", NoiseSpec::rotation(NoiseSpec::Kind::rzz, 0.5)},
        {"cnot", NoiseSpec::cnot_error()}};
    for (const auto& [name, spec] : models) {
      CorrelatedConfig cfg;
      cfg.noise = spec;
      cfg.measurement = name == "cnot" ? "mixed_zx" : "z_basis";
      const EpsilonRow r = epsilon_row(name, cfg);
      const double tol = name == "cnot" ? 0.15 : 0.006;
      row(name + ".eps1", r.estimated.eps1, r.exact.eps1, tol);
      row(name + ".eps2", r.estimated.eps2, r.exact.eps2, tol);
      row(name + ".eps3", r.estimated.eps3, r.exact.eps3, name == "cnot" ? 0.3 : tol);
    }
  } else if (target == "leakage") {
    LeakageBenchmarkConfig cfg;
    const auto points = run_leakage_benchmark(cfg);
    for (const auto& pt : points) {
      row("gamma=" + std::to_string(pt.gamma) + ".L_model1", pt.model1.leakage, pt.exact_leakage,
          3.0 * pt.model1.leakage_sigma);
      row("gamma=" + std::to_string(pt.gamma) + ".L_model2", pt.model2.leakage, pt.exact_leakage,
          3.0 * pt.model2.leakage_sigma);
    }
  } else if (target == "marginals") {
    CorrelatedConfig cfg;
    cfg.noise = NoiseSpec::rz(0.1, 0.1);
    const MarginalReport rep = run_marginal_reconstruction(cfg);
    row("deltaR2.max_offdiag_err",
        (rep.estimated_crosstalk.delta_r2 - Mat::Identity(9, 9)).cwiseAbs().maxCoeff(), 0.0, 0.05);
    row("pauli_rates.identity", rep.pauli_rates(0), rep.exact_pauli_rates(0), 0.02);
  } else if (target == "coverage") {
    return cmd_coverage(100, 1000, out_dir + "/coverage.csv", 7);
  } else {
    throw ConfigError("unknown reproduce target '" + target +
                      "'; valid: table1, table2, coverage, leakage, marginals");
  }
  std::cout << (all_pass ? "ALL PASS" : "SOME FAILED") << "\n";
  return all_pass ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gate-set shadow benchmarking toolkit"};
  app.require_subcommand(1);

  std::string name = "g1", out = "out.json", config_path, dataset_path, probe, target;
  std::string estimator = "mean", model = "single", methods = "percentile,bca,normal,fit_cov_2sigma";
  std::vector<std::string> probes;
  uint64_t seed = 0;
  bool seed_set = false;
  int replicates = 1000, trials = 100;
  double level = 0.90;

  auto* gen = app.add_subcommand("generate-group", "emit a gate-set JSON file");
  gen->add_option("--name", name, "catalog gate set")->required();
  gen->add_option("--out", out, "output path")->required();

  auto* sim = app.add_subcommand("simulate", "run the data-collection phase");
  sim->add_option("--config", config_path, "experiment config JSON")->required();
  sim->add_option("--out", out, "dataset output path (JSON lines)")->required();
  sim->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
    seed_set = true;
  });

  auto* post = app.add_subcommand("postprocess", "estimate sequence functions and fit decays");
  post->add_option("--dataset", dataset_path)->required();
  post->add_option("--probe", probes, "catalog probe name(s)")->required();
  post->add_option("--estimator", estimator, "mean | mom");
  post->add_option("--model", model, "single | offset | offset_m");
  post->add_option("--out", out)->required();

  auto* fit = app.add_subcommand("fit", "alias of postprocess for a single probe");
  fit->add_option("--dataset", dataset_path)->required();
  fit->add_option("--probe", probe)->required();
  fit->add_option("--estimator", estimator);
  fit->add_option("--model", model);
  fit->add_option("--out", out)->required();

  auto* marg = app.add_subcommand("marginals", "unital-marginal reconstruction (c1xc1 datasets)");
  marg->add_option("--dataset", dataset_path)->required();
  marg->add_option("--estimator", estimator);
  marg->add_option("--out", out)->required();

  auto* boot = app.add_subcommand("bootstrap", "bootstrap confidence intervals for lambda");
  boot->add_option("--dataset", dataset_path)->required();
  boot->add_option("--probe", probe)->required();
  boot->add_option("--estimator", estimator);
  boot->add_option("--method", methods, "comma-separated CI methods");
  boot->add_option("--B", replicates, "bootstrap replicates");
  boot->add_option("--level", level, "nominal coverage");
  boot->add_option("--seed", seed);
  boot->add_option("--out", out)->required();

  auto* cov = app.add_subcommand("coverage", "coverage-probability study");
  cov->add_option("--trials", trials);
  cov->add_option("--B", replicates);
  cov->add_option("--seed", seed);
  cov->add_option("--out", out)->required();

  auto* rep = app.add_subcommand("reproduce", "desk-scale reproduction bundles");
  rep->add_option("--target", target, "table1 | table2 | coverage | leakage | marginals")
      ->required();
  rep->add_option("--out", out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate_group(name, out);
    if (sim->parsed()) return cmd_simulate(config_path, out, seed, seed_set);
    if (post->parsed()) return cmd_postprocess(dataset_path, probes, estimator, model, out);
    if (fit->parsed()) return cmd_postprocess(dataset_path, {probe}, estimator, model, out);
    if (marg->parsed()) return cmd_marginals(dataset_path, estimator, out);
    if (boot->parsed())
      return cmd_bootstrap(dataset_path, probe, estimator, methods, replicates, level, seed, out);
    if (cov->parsed()) return cmd_coverage(trials, replicates, out, seed);
    if (rep->parsed()) return cmd_reproduce(target, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
