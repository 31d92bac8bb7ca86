#include "juntalab/tester.hpp"

#include <algorithm>
#include <stdexcept>

namespace juntalab {

namespace {

// Stream tags for deriving the partition and pool substreams of a run seed.
constexpr std::uint64_t kPartitionStream = 0xA11;
constexpr std::uint64_t kPoolStream = 0xB22;

}  // namespace

const char* to_string(BetaConvention c) {
  return c == BetaConvention::kProofEighth ? "proof_eighth" : "algorithm_sixteenth";
}

BetaConvention beta_convention_from_string(const std::string& name) {
  if (name == "proof_eighth") return BetaConvention::kProofEighth;
  if (name == "algorithm_sixteenth") return BetaConvention::kAlgorithmSixteenth;
  throw std::invalid_argument("unknown beta convention: " + name);
}

EstimatorConfig TesterConfig::estimator_config() const {
  EstimatorConfig ec;
  ec.rho = rho;
  ec.beta = beta();
  ec.gamma = kGamma;
  ec.k = k;
  ec.l = l();
  ec.C = C;
  return ec;
}

void TesterConfig::validate() const {
  if (k < 1) throw std::invalid_argument("TesterConfig: k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("TesterConfig: epsilon must be in (0, 1)");
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("TesterConfig: rho must be in (0, 1)");
  if (l_override.has_value() && *l_override < k)
    throw std::invalid_argument("TesterConfig: l_override must be >= k");
  estimator_config().validate();
}

bool operator==(const Verdict& a, const Verdict& b) {
  return a.accept == b.accept && a.witness == b.witness && a.witness_v == b.witness_v &&
         a.queries_used == b.queries_used && a.threshold == b.threshold &&
         a.v_min == b.v_min && a.v_median == b.v_median &&
         a.defined_count == b.defined_count && a.undefined_count == b.undefined_count &&
         a.partition_seed == b.partition_seed &&
         a.partition_assignment == b.partition_assignment;
}

TableDecision decide_from_table(const EstimateTable& table, double threshold) {
  TableDecision d;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& e = table.entry(i);
    if (e.v.has_value() && *e.v <= threshold) {
      d.accept = true;
      d.witness = table.subset(i);
      d.witness_v = *e.v;
      return d;
    }
  }
  return d;
}

Verdict run_part_junta_tester(const DenseUnitary& u, const QubitPartition& partition,
                              const TesterConfig& cfg, unsigned jobs) {
  cfg.validate();
  if (partition.num_parts() != cfg.l())
    throw std::invalid_argument("run_part_junta_tester: partition has " +
                                std::to_string(partition.num_parts()) +
                                " parts, config derives l = " + std::to_string(cfg.l()));

  InfluenceSampler sampler(u, cfg.backend, cfg.seed, jobs);
  const SamplePool pool = sample_pool(sampler, partition, cfg.estimator_config(),
                                      CounterRng::derive(cfg.seed, kPoolStream), jobs);
  const EstimateTable table = build_estimates(pool, cfg.k, cfg.l());
  const TableDecision decision = decide_from_table(table, cfg.threshold());

  Verdict v;
  v.accept = decision.accept;
  v.witness = decision.witness;
  v.witness_v = decision.witness_v;
  v.queries_used = sampler.queries();
  v.threshold = cfg.threshold();
  v.partition_seed = cfg.seed;
  v.partition_assignment = partition.assignment();

  std::vector<double> defined;
  defined.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table.entry(i).v.has_value()) defined.push_back(*table.entry(i).v);
  v.defined_count = defined.size();
  v.undefined_count = table.size() - defined.size();
  if (!defined.empty()) {
    std::sort(defined.begin(), defined.end());
    v.v_min = defined.front();
    const std::size_t mid = defined.size() / 2;
    v.v_median = (defined.size() % 2 == 1)
                     ? defined[mid]
                     : 0.5 * (defined[mid - 1] + defined[mid]);
  }
  return v;
}

Verdict run_tolerant_tester(const DenseUnitary& u, const TesterConfig& cfg, unsigned jobs) {
  cfg.validate();
  const QubitPartition partition = random_partition(
      u.num_qubits(), cfg.l(), CounterRng::derive(cfg.seed, kPartitionStream));
  return run_part_junta_tester(u, partition, cfg, jobs);
}

std::uint64_t query_count(const TesterConfig& cfg) {
  return cfg.estimator_config().sample_count();
}

}  // namespace juntalab
