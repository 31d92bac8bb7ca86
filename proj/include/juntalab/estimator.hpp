#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "juntalab/cj.hpp"
#include "juntalab/partition.hpp"
#include "juntalab/sets.hpp"

namespace juntalab {

/// Parameters of the rho-subset influence estimator. The sample count is
///   m = ceil(C * k * log2(l) / (gamma^2 * beta * rho * (1-rho)^k)).
struct EstimatorConfig {
  double rho = 0.5;
  double beta = 0.125;
  double gamma = 0.125;
  int k = 1;
  int l = 24;
  double C = 1.0;

  void validate() const;

  /// The closed-form m; validates first.
  std::uint64_t sample_count() const;
};

/// One shot: the rho-biased subset of [l] that was drawn and the sampled
/// influence bit for phi(subset).
struct SampleRecord {
  IndexSet subset;
  std::uint8_t bit = 0;

  friend bool operator==(const SampleRecord& a, const SampleRecord& b) {
    return a.subset == b.subset && a.bit == b.bit;
  }
};

/// The m sampled records, together with the configuration and seed that
/// produced them.
class SamplePool {
 public:
  SamplePool(EstimatorConfig cfg, std::uint64_t seed, std::vector<SampleRecord> records);

  const EstimatorConfig& config() const { return cfg_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<SampleRecord>& records() const { return records_; }
  std::uint64_t size() const { return records_.size(); }

  friend bool operator==(const SamplePool& a, const SamplePool& b) {
    return a.seed_ == b.seed_ && a.records_ == b.records_;
  }

 private:
  EstimatorConfig cfg_;
  std::uint64_t seed_;
  std::vector<SampleRecord> records_;
};

/// Draws m shots. Shot i derives its own counter stream from (seed, i):
/// first the rho-biased subset of [l], then the influence bit for the
/// part union, so the pool is reproducible for any jobs value. Exactly m
/// queries are charged to the sampler.
SamplePool sample_pool(const InfluenceSampler& sampler, const QubitPartition& partition,
                       const EstimatorConfig& cfg, std::uint64_t seed, unsigned jobs = 1);

/// Estimate for one candidate set S: mean bit over the pool records whose
/// subset is contained in S, or undefined when no record qualifies.
struct EstimateEntry {
  std::optional<double> v;
  std::uint64_t count = 0;
};

/// Estimates v_S for every S of size l-k, keyed in lexicographic order of
/// the sorted subsets.
class EstimateTable {
 public:
  EstimateTable(int l, int k, std::vector<IndexSet> subsets,
                std::vector<EstimateEntry> entries);

  int l() const { return l_; }
  int k() const { return k_; }
  std::size_t size() const { return subsets_.size(); }
  const IndexSet& subset(std::size_t i) const { return subsets_[i]; }
  const EstimateEntry& entry(std::size_t i) const { return entries_[i]; }
  std::vector<EstimateEntry>& mutable_entries() { return entries_; }

  std::size_t undefined_count() const;
  bool has_undefined() const { return undefined_count() > 0; }

 private:
  int l_;
  int k_;
  std::vector<IndexSet> subsets_;
  std::vector<EstimateEntry> entries_;
};

/// Aggregates the pool into v_S for every size-(l-k) subset S. A record
/// belongs to S exactly when its subset avoids the k-element complement
/// of S, so each membership test touches only k parts.
EstimateTable build_estimates(const SamplePool& pool, int k, int l);

/// Comparison of a table against exact rho-subset influences: each S with
/// exact value above rho*beta/3 must fall in the (1 +/- gamma) relative
/// band, and each S with exact value at most rho*beta/4 must stay below
/// (1+gamma)*rho*beta/4. Sets between the two thresholds carry no
/// guarantee and are skipped.
struct GuaranteeReport {
  std::size_t case1_total = 0;
  std::size_t case1_violations = 0;
  std::size_t case2_total = 0;
  std::size_t case2_violations = 0;
  std::size_t unclassified = 0;
  std::size_t undefined_entries = 0;

  std::size_t classified() const { return case1_total + case2_total; }
  std::size_t violations() const { return case1_violations + case2_violations; }
  double violation_fraction() const {
    return classified() == 0 ? 0.0
                             : static_cast<double>(violations()) /
                                   static_cast<double>(classified());
  }
};

/// exact[i] must hold the exact rho-subset influence of table.subset(i).
GuaranteeReport estimate_guarantee_check(const EstimateTable& table,
                                         const std::vector<double>& exact,
                                         const EstimatorConfig& cfg);

}  // namespace juntalab
