#include "juntalab/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "juntalab/parallel.hpp"

namespace juntalab {

void EstimatorConfig::validate() const {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("EstimatorConfig: rho must be in (0, 1)");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("EstimatorConfig: beta must be in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("EstimatorConfig: gamma must be in (0, 1)");
  if (k < 1) throw std::invalid_argument("EstimatorConfig: k must be >= 1");
  if (l < k) throw std::invalid_argument("EstimatorConfig: l must be >= k");
  if (C < 1.0) throw std::invalid_argument("EstimatorConfig: C must be >= 1");
  const double raw = C * k * std::log2(static_cast<double>(l)) /
                     (gamma * gamma * beta * rho * std::pow(1.0 - rho, k));
  if (!std::isfinite(raw) || raw < 1.0)
    throw std::invalid_argument("EstimatorConfig: derived sample count below 1 (l too small?)");
  if (raw > 1e15)
    throw ResourceError("EstimatorConfig: derived sample count exceeds 1e15");
}

std::uint64_t EstimatorConfig::sample_count() const {
  validate();
  const double raw = C * k * std::log2(static_cast<double>(l)) /
                     (gamma * gamma * beta * rho * std::pow(1.0 - rho, k));
  return static_cast<std::uint64_t>(std::ceil(raw));
}

SamplePool::SamplePool(EstimatorConfig cfg, std::uint64_t seed,
                       std::vector<SampleRecord> records)
    : cfg_(cfg), seed_(seed), records_(std::move(records)) {}

SamplePool sample_pool(const InfluenceSampler& sampler, const QubitPartition& partition,
                       const EstimatorConfig& cfg, std::uint64_t seed, unsigned jobs) {
  cfg.validate();
  if (partition.num_parts() != cfg.l)
    throw std::invalid_argument("sample_pool: partition part count differs from cfg.l");
  if (partition.num_qubits() != sampler.num_qubits())
    throw std::invalid_argument("sample_pool: partition and sampler disagree on n");

  const std::uint64_t m = cfg.sample_count();
  const IndexSet all_parts = IndexSet::full(cfg.l);

  std::vector<SampleRecord> records(m);
  parallel_for(m, jobs, [&](std::size_t i) {
    CounterRng rng(CounterRng::derive(seed, i));
    SampleRecord rec;
    rec.subset = rho_biased_subset(all_parts, cfg.rho, rng);
    rec.bit = static_cast<std::uint8_t>(
        sampler.sample_bit(phi(partition, rec.subset), rng));
    records[i] = std::move(rec);
  });
  return SamplePool(cfg, seed, std::move(records));
}

EstimateTable::EstimateTable(int l, int k, std::vector<IndexSet> subsets,
                             std::vector<EstimateEntry> entries)
    : l_(l), k_(k), subsets_(std::move(subsets)), entries_(std::move(entries)) {
  if (subsets_.size() != entries_.size())
    throw std::invalid_argument("EstimateTable: subset/entry size mismatch");
}

std::size_t EstimateTable::undefined_count() const {
  std::size_t c = 0;
  for (const auto& e : entries_)
    if (!e.v.has_value()) ++c;
  return c;
}

EstimateTable build_estimates(const SamplePool& pool, int k, int l) {
  if (k < 1 || l < k) throw std::invalid_argument("build_estimates: need 1 <= k <= l");

  std::vector<IndexSet> subsets;
  std::vector<EstimateEntry> entries;
  for (CombinationIterator it(l, l - k); !it.done(); it.advance()) {
    const IndexSet s = it.current_set();
    const IndexSet excluded = s.complement(l);  // the k parts outside S

    std::uint64_t count = 0;
    std::uint64_t ones = 0;
    for (const auto& rec : pool.records()) {
      if (rec.subset.intersects(excluded)) continue;  // not contained in S
      ++count;
      ones += rec.bit;
    }
    EstimateEntry e;
    e.count = count;
    if (count > 0)
      e.v = static_cast<double>(ones) / static_cast<double>(count);
    subsets.push_back(s);
    entries.push_back(e);
  }
  return EstimateTable(l, k, std::move(subsets), std::move(entries));
}

GuaranteeReport estimate_guarantee_check(const EstimateTable& table,
                                         const std::vector<double>& exact,
                                         const EstimatorConfig& cfg) {
  if (exact.size() != table.size())
    throw std::invalid_argument("estimate_guarantee_check: exact table size mismatch");

  const double case1_floor = cfg.rho * cfg.beta / 3.0;
  const double case2_ceiling = cfg.rho * cfg.beta / 4.0;
  const double case2_cap = (1.0 + cfg.gamma) * case2_ceiling;

  GuaranteeReport report;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& entry = table.entry(i);
    if (!entry.v.has_value()) {
      ++report.undefined_entries;
      continue;
    }
    const double e = exact[i];
    const double v = *entry.v;
    if (e > case1_floor) {
      ++report.case1_total;
      if (v < (1.0 - cfg.gamma) * e || v > (1.0 + cfg.gamma) * e)
        ++report.case1_violations;
    } else if (e <= case2_ceiling) {
      ++report.case2_total;
      if (v > case2_cap) ++report.case2_violations;
    } else {
      ++report.unclassified;
    }
  }
  return report;
}

}  // namespace juntalab
