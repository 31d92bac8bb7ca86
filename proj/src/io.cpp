#include "juntalab/io.hpp"

#include <cmath>
#include <fstream>

namespace juntalab {

using nlohmann::json;

DenseUnitary load_unitary(const std::string& path, int max_qubits) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open " + path);

  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    // nlohmann messages include the offending line and column.
    throw FileFormatError(path + ": " + e.what());
  }

  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw FileFormatError(path + ": expected object with \"n\" and \"entries\"");
  const int n = j.at("n").get<int>();
  if (n < 1) throw FileFormatError(path + ": n must be >= 1");
  const auto& entries = j.at("entries");
  if (!entries.is_array())
    throw FileFormatError(path + ": \"entries\" must be an array");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (entries.size() != dim * dim)
    throw FileFormatError(path + ": expected " + std::to_string(dim * dim) +
                          " entries, found " + std::to_string(entries.size()));

  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t idx = 0; idx < dim * dim; ++idx) {
    const auto& cell = entries[idx];
    if (!cell.is_array() || cell.size() != 2)
      throw FileFormatError(path + ": entry " + std::to_string(idx) +
                            " is not a [re, im] pair");
    m(static_cast<Eigen::Index>(idx / dim), static_cast<Eigen::Index>(idx % dim)) =
        Complex(cell[0].get<double>(), cell[1].get<double>());
  }

  try {
    return DenseUnitary(std::move(m), max_qubits);
  } catch (const std::invalid_argument& e) {
    throw FileFormatError(path + ": " + e.what());
  }
}

void write_unitary(const std::string& path, const DenseUnitary& u,
                   const nlohmann::json& meta) {
  const Eigen::Index dim = u.entries().rows();
  json entries = json::array();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const Complex z = u.entries()(r, c);
      entries.push_back(json::array({z.real(), z.imag()}));
    }
  }
  json j;
  j["n"] = u.num_qubits();
  j["entries"] = std::move(entries);
  if (!meta.is_null() && !meta.empty()) j["meta"] = meta;

  std::ofstream out(path);
  if (!out) throw FileFormatError("cannot write " + path);
  out << j.dump() << "\n";
}

json to_json(const Verdict& v) {
  json j;
  j["decision"] = v.accept ? "accept" : "reject";
  j["witness"] = v.witness ? json(v.witness->elements()) : json(nullptr);
  j["witness_v"] = v.witness_v ? json(*v.witness_v) : json(nullptr);
  j["queries_used"] = v.queries_used;
  j["threshold"] = v.threshold;
  j["v_min"] = v.v_min ? json(*v.v_min) : json(nullptr);
  j["v_median"] = v.v_median ? json(*v.v_median) : json(nullptr);
  j["defined_count"] = v.defined_count;
  j["undefined_count"] = v.undefined_count;
  j["partition_seed"] = v.partition_seed;
  j["partition"] = v.partition_assignment;
  return j;
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.accept = j.at("decision").get<std::string>() == "accept";
  if (!j.at("witness").is_null())
    v.witness = IndexSet(j.at("witness").get<std::vector<int>>());
  if (!j.at("witness_v").is_null()) v.witness_v = j.at("witness_v").get<double>();
  v.queries_used = j.at("queries_used").get<std::uint64_t>();
  v.threshold = j.at("threshold").get<double>();
  if (!j.at("v_min").is_null()) v.v_min = j.at("v_min").get<double>();
  if (!j.at("v_median").is_null()) v.v_median = j.at("v_median").get<double>();
  v.defined_count = j.at("defined_count").get<std::uint64_t>();
  v.undefined_count = j.at("undefined_count").get<std::uint64_t>();
  v.partition_seed = j.at("partition_seed").get<std::uint64_t>();
  v.partition_assignment = j.at("partition").get<std::vector<int>>();
  return v;
}

json to_json(const TesterConfig& cfg) {
  json j;
  j["k"] = cfg.k;
  j["epsilon"] = cfg.epsilon;
  j["rho"] = cfg.rho;
  j["seed"] = cfg.seed;
  j["l"] = cfg.l();
  j["l_override"] = cfg.l_override ? json(*cfg.l_override) : json(nullptr);
  j["beta"] = cfg.beta();
  j["beta_convention"] = to_string(cfg.beta_convention);
  j["gamma"] = TesterConfig::kGamma;
  j["C"] = cfg.C;
  j["backend"] = to_string(cfg.backend);
  return j;
}

TesterConfig tester_config_from_json(const json& j) {
  TesterConfig cfg;
  cfg.k = j.at("k").get<int>();
  cfg.epsilon = j.at("epsilon").get<double>();
  cfg.rho = j.at("rho").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("l_override").is_null()) cfg.l_override = j.at("l_override").get<int>();
  cfg.beta_convention = beta_convention_from_string(j.at("beta_convention").get<std::string>());
  cfg.C = j.at("C").get<double>();
  cfg.backend = backend_from_string(j.at("backend").get<std::string>());
  return cfg;
}

json to_json(const InstanceSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  j["n"] = spec.n;
  j["T"] = spec.t.elements();
  j["target_distance"] = spec.target_distance;
  j["seed"] = spec.seed;
  j["path"] = spec.path;
  return j;
}

InstanceSpec instance_spec_from_json(const json& j) {
  InstanceSpec spec;
  spec.kind = instance_kind_from_string(j.at("kind").get<std::string>());
  spec.n = j.at("n").get<int>();
  spec.t = IndexSet(j.at("T").get<std::vector<int>>());
  spec.target_distance = j.at("target_distance").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.path = j.at("path").get<std::string>();
  return spec;
}

json to_json(const RunRecord& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["seed"] = r.seed;
  j["config"] = to_json(r.config);
  j["instance"] = to_json(r.instance);
  j["verdict"] = to_json(r.verdict);
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

RunRecord run_record_from_json(const json& j) {
  RunRecord r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config = tester_config_from_json(j.at("config"));
  r.instance = instance_spec_from_json(j.at("instance"));
  r.verdict = verdict_from_json(j.at("verdict"));
  r.wall_time_s = j.at("wall_time_s").get<double>();
  return r;
}

BinomialCi wilson_interval_95(std::uint64_t successes, std::uint64_t trials) {
  BinomialCi ci;
  if (trials == 0) return ci;
  const double z = 1.959963984540054;
  const double nd = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (p + z2 / (2.0 * nd)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
  ci.rate = p;
  ci.low = (successes == 0) ? 0.0 : std::max(0.0, center - half);
  ci.high = (successes == trials) ? 1.0 : std::min(1.0, center + half);
  return ci;
}

}  // namespace juntalab
