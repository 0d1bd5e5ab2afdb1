#include "gss/config.hpp"

#include <fstream>

namespace gss {

using nlohmann::json;

namespace {

NoiseSpec::Kind kind_by_name(const std::string& k, const std::string& path) {
  if (k == "none") return NoiseSpec::Kind::none;
  if (k == "pauli") return NoiseSpec::Kind::pauli;
  if (k == "amplitude_damping") return NoiseSpec::Kind::amplitude_damping;
  if (k == "rz") return NoiseSpec::Kind::rz;
  if (k == "rzz") return NoiseSpec::Kind::rzz;
  if (k == "rxx") return NoiseSpec::Kind::rxx;
  if (k == "ryy") return NoiseSpec::Kind::ryy;
  if (k == "cnot") return NoiseSpec::Kind::cnot;
  if (k == "composite") return NoiseSpec::Kind::composite;
  throw ConfigError(path + ".kind: unknown noise kind '" + k + "'");
}

std::string kind_name(NoiseSpec::Kind k) {
  switch (k) {
    case NoiseSpec::Kind::none: return "none";
    case NoiseSpec::Kind::pauli: return "pauli";
    case NoiseSpec::Kind::amplitude_damping: return "amplitude_damping";
    case NoiseSpec::Kind::rz: return "rz";
    case NoiseSpec::Kind::rzz: return "rzz";
    case NoiseSpec::Kind::rxx: return "rxx";
    case NoiseSpec::Kind::ryy: return "ryy";
    case NoiseSpec::Kind::cnot: return "cnot";
    case NoiseSpec::Kind::composite: return "composite";
  }
  return "?";
}

NoiseSpec from_json_at(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": noise spec must be an object");
  NoiseSpec s;
  s.kind = kind_by_name(j.value("kind", "none"), path);
  const std::string app = j.value("application", "uniform");
  if (app == "uniform")
    s.application = NoiseSpec::Application::uniform;
  else if (app == "per_cnot_count")
    s.application = NoiseSpec::Application::per_cnot_count;
  else if (app == "per_qubit_local")
    s.application = NoiseSpec::Application::per_qubit_local;
  else
    throw ConfigError(path + ".application: unknown rule '" + app + "'");
  if (j.contains("p")) s.pauli_probs = j.at("p").get<std::vector<double>>();
  s.gamma1 = j.value("gamma1", 0.0);
  s.gamma2 = j.value("gamma2", 0.0);
  s.theta = j.value("theta", 0.0);
  s.theta1 = j.value("theta1", 0.0);
  s.theta2 = j.value("theta2", 0.0);
  if (j.contains("children")) {
    int i = 0;
    for (const auto& c : j.at("children"))
      s.children.push_back(from_json_at(c, path + ".children[" + std::to_string(i++) + "]"));
  }
  return s;
}

}  // namespace

NoiseSpec noise_spec_from_json(const json& j) { return from_json_at(j, "noise"); }

json noise_spec_to_json(const NoiseSpec& s) {
  json j;
  j["kind"] = kind_name(s.kind);
  switch (s.application) {
    case NoiseSpec::Application::uniform: j["application"] = "uniform"; break;
    case NoiseSpec::Application::per_cnot_count: j["application"] = "per_cnot_count"; break;
    case NoiseSpec::Application::per_qubit_local: j["application"] = "per_qubit_local"; break;
  }
  if (!s.pauli_probs.empty()) j["p"] = s.pauli_probs;
  if (s.gamma1 != 0.0) j["gamma1"] = s.gamma1;
  if (s.gamma2 != 0.0) j["gamma2"] = s.gamma2;
  if (s.theta != 0.0) j["theta"] = s.theta;
  if (s.theta1 != 0.0) j["theta1"] = s.theta1;
  if (s.theta2 != 0.0) j["theta2"] = s.theta2;
  if (!s.children.empty()) {
    json arr = json::array();
    for (const auto& c : s.children) arr.push_back(noise_spec_to_json(c));
    j["children"] = arr;
  }
  return j;
}

DecayModelKind fit_model_by_name(const std::string& name) {
  if (name == "single") return DecayModelKind::single;
  if (name == "offset") return DecayModelKind::offset;
  if (name == "offset_m") return DecayModelKind::offset_m;
  throw ConfigError("fit_model: unknown model '" + name + "'");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  try {
    c.gate_set = j.at("gate_set").get<std::string>();
  } catch (const json::exception&) {
    throw ConfigError("gate_set: required string");
  }
  gate_set_by_name(c.gate_set);  // throws listing valid names
  c.measurement = j.value("measurement", "z_basis");
  measurement_by_name(c.measurement);
  if (j.contains("noise")) c.noise = noise_spec_from_json(j.at("noise"));
  if (j.contains("spam")) {
    const auto& sp = j.at("spam");
    if (sp.contains("prep")) c.spam.prep = from_json_at(sp.at("prep"), "spam.prep");
    if (sp.contains("meas")) c.spam.meas = from_json_at(sp.at("meas"), "spam.meas");
  }
  if (!j.contains("plan")) throw ConfigError("plan: required object");
  const auto& p = j.at("plan");
  try {
    c.plan.lengths = p.at("lengths").get<std::vector<int>>();
    c.plan.reps_per_length = p.at("reps_per_length").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("plan: ") + e.what());
  }
  const std::string mode = p.value("mode", "random");
  if (mode == "random")
    c.plan.mode = SequencePlan::Mode::random;
  else if (mode == "interleaved")
    c.plan.mode = SequencePlan::Mode::interleaved;
  else
    throw ConfigError("plan.mode: expected 'random' or 'interleaved'");
  c.plan.interleaved_target = p.value("interleaved_target", -1);
  c.plan.shots_per_record = p.value("shots_per_record", 1);
  c.seed = j.value("seed", 0ull);
  c.plan.seed = c.seed;
  if (j.contains("probes")) c.probes = j.at("probes").get<std::vector<std::string>>();
  const std::string est = j.value("estimator", "mean");
  if (est == "mean")
    c.estimator = EstimatorKind::mean;
  else if (est == "mom" || est == "median_of_means")
    c.estimator = EstimatorKind::median_of_means;
  else
    throw ConfigError("estimator: expected 'mean' or 'mom'");
  c.mom_groups = j.value("mom_groups", 0);
  c.fit_model = j.value("fit_model", "single");
  fit_model_by_name(c.fit_model);
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json j;
  j["gate_set"] = gate_set;
  j["measurement"] = measurement;
  j["noise"] = noise_spec_to_json(noise);
  if (spam.prep || spam.meas) {
    json sp;
    if (spam.prep) sp["prep"] = noise_spec_to_json(*spam.prep);
    if (spam.meas) sp["meas"] = noise_spec_to_json(*spam.meas);
    j["spam"] = sp;
  }
  j["plan"] = {{"lengths", plan.lengths},
               {"reps_per_length", plan.reps_per_length},
               {"mode", plan.mode == SequencePlan::Mode::random ? "random" : "interleaved"},
               {"interleaved_target", plan.interleaved_target},
               {"shots_per_record", plan.shots_per_record}};
  j["seed"] = seed;
  j["probes"] = probes;
  j["estimator"] = estimator == EstimatorKind::mean ? "mean" : "mom";
  j["mom_groups"] = mom_groups;
  j["fit_model"] = fit_model;
  return j;
}

std::string ExperimentConfig::hash() const {
  // nlohmann objects are key-sorted, so dump() is canonical
  const std::string dump = to_json().dump();
  return hash_hex(fnv1a(dump.data(), dump.size()));
}

}  // namespace gss
