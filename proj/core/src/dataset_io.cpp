#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "gss/simulator.hpp"

namespace gss {

namespace {

using nlohmann::json;

json plan_to_json(const SequencePlan& p) {
  return json{{"lengths", p.lengths},
              {"reps_per_length", p.reps_per_length},
              {"mode", p.mode == SequencePlan::Mode::random ? "random" : "interleaved"},
              {"interleaved_target", p.interleaved_target},
              {"seed", p.seed},
              {"shots_per_record", p.shots_per_record}};
}

SequencePlan plan_from_json(const json& j) {
  SequencePlan p;
  p.lengths = j.at("lengths").get<std::vector<int>>();
  p.reps_per_length = j.at("reps_per_length").get<int>();
  p.mode = j.at("mode").get<std::string>() == "interleaved" ? SequencePlan::Mode::interleaved
                                                            : SequencePlan::Mode::random;
  p.interleaved_target = j.at("interleaved_target").get<int>();
  p.seed = j.at("seed").get<uint64_t>();
  p.shots_per_record = j.at("shots_per_record").get<int>();
  return p;
}

}  // namespace

void write_jsonl(const ShadowDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  json header{{"gate_set", ds.gate_set},
              {"gate_set_hash", ds.gate_set_hash},
              {"config_hash", ds.config_hash},
              {"measurement", ds.measurement},
              {"seed", ds.seed},
              {"plan", plan_to_json(ds.plan)},
              {"outcome_labels", ds.outcome_labels}};
  out << header.dump() << "\n";
  for (const Record& r : ds.records) {
    json line{{"m", r.m},
              {"seq", r.seq},
              {"x", ds.outcome_labels.at(static_cast<size_t>(r.outcome))},
              {"rep", r.rep}};
    out << line.dump() << "\n";
  }
}

ShadowDataset read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset '" + path + "' is empty");
  json header = json::parse(line);
  ShadowDataset ds;
  ds.gate_set = header.at("gate_set").get<std::string>();
  ds.gate_set_hash = header.at("gate_set_hash").get<std::string>();
  ds.config_hash = header.value("config_hash", "");
  ds.measurement = header.at("measurement").get<std::string>();
  ds.seed = header.at("seed").get<uint64_t>();
  ds.plan = plan_from_json(header.at("plan"));
  ds.outcome_labels = header.at("outcome_labels").get<std::vector<std::string>>();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    Record r;
    r.m = j.at("m").get<int>();
    r.seq = j.at("seq").get<std::vector<int>>();
    r.rep = j.at("rep").get<int>();
    const std::string label = j.at("x").get<std::string>();
    int idx = -1;
    for (size_t i = 0; i < ds.outcome_labels.size(); ++i)
      if (ds.outcome_labels[i] == label) idx = static_cast<int>(i);
    if (idx < 0) throw std::runtime_error("dataset record has unknown outcome '" + label + "'");
    r.outcome = idx;
    ds.records.push_back(std::move(r));
  }
  return ds;
}

}  // namespace gss
