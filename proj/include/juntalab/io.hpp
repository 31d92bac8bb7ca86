#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "juntalab/instances.hpp"
#include "juntalab/pauli.hpp"
#include "juntalab/tester.hpp"

namespace juntalab {

/// Raised for malformed or invalid input files; carries a message fit for
/// user-facing diagnostics.
class FileFormatError : public std::runtime_error {
 public:
  explicit FileFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Unitary file schema: {"n": int, "entries": [[re, im], ...]} with 4^n
/// row-major entries. Extra keys (e.g. "meta") are preserved on write and
/// ignored on read. Serialization is lossless: reading back a written
/// file reproduces the matrix bit-for-bit.
DenseUnitary load_unitary(const std::string& path,
                          int max_qubits = DenseUnitary::kDefaultMaxQubits);

void write_unitary(const std::string& path, const DenseUnitary& u,
                   const nlohmann::json& meta = nlohmann::json());

nlohmann::json to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TesterConfig& cfg);
TesterConfig tester_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const InstanceSpec& spec);
InstanceSpec instance_spec_from_json(const nlohmann::json& j);

/// One executed trial: everything needed to replay it bit-for-bit.
struct RunRecord {
  std::string tool_version;
  std::uint64_t seed = 0;
  TesterConfig config;
  InstanceSpec instance;
  Verdict verdict;
  double wall_time_s = 0.0;
};

nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

/// Wilson 95% score interval for a binomial proportion.
struct BinomialCi {
  double rate = 0.0;
  double low = 0.0;
  double high = 0.0;
};
BinomialCi wilson_interval_95(std::uint64_t successes, std::uint64_t trials);

}  // namespace juntalab
