#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "juntalab/cj.hpp"
#include "juntalab/estimator.hpp"
#include "juntalab/partition.hpp"
#include "juntalab/sets.hpp"

namespace juntalab {

/// Which reading of beta the tester uses: epsilon^2/8 (the value the
/// soundness argument works with) or epsilon^2/16 (the value printed in
/// the procedure box). The two appear side by side in the source
/// material, so both are exposed rather than silently picking one.
enum class BetaConvention { kProofEighth, kAlgorithmSixteenth };

const char* to_string(BetaConvention c);
BetaConvention beta_convention_from_string(const std::string& name);

struct TesterConfig {
  int k = 1;
  double epsilon = 0.5;
  double rho = 0.5;
  std::uint64_t seed = 0;
  std::optional<int> l_override;
  BetaConvention beta_convention = BetaConvention::kProofEighth;
  double C = 1.0;
  BackendMode backend = BackendMode::kAnalytic;

  int l() const { return l_override.value_or(24 * k * k); }
  double beta() const {
    const double e2 = epsilon * epsilon;
    return beta_convention == BetaConvention::kProofEighth ? e2 / 8.0 : e2 / 16.0;
  }
  static constexpr double kGamma = 0.125;

  /// Acceptance threshold 9 * rho * beta / 32.
  double threshold() const { return 9.0 * rho * beta() / 32.0; }

  EstimatorConfig estimator_config() const;

  void validate() const;
};

struct Verdict {
  bool accept = false;
  std::optional<IndexSet> witness;    // first qualifying S (lexicographic)
  std::optional<double> witness_v;
  std::uint64_t queries_used = 0;
  double threshold = 0.0;
  std::optional<double> v_min;        // over defined entries
  std::optional<double> v_median;
  std::uint64_t defined_count = 0;
  std::uint64_t undefined_count = 0;
  std::uint64_t partition_seed = 0;
  std::vector<int> partition_assignment;

  friend bool operator==(const Verdict& a, const Verdict& b);
};

/// Scans the size-(l-k) subsets in lexicographic order and accepts on the
/// first defined estimate at or below the threshold. Undefined entries
/// never accept.
struct TableDecision {
  bool accept = false;
  std::optional<IndexSet> witness;
  std::optional<double> witness_v;
};
TableDecision decide_from_table(const EstimateTable& table, double threshold);

/// Part-junta tester against a caller-supplied partition: runs the
/// rho-subset estimator with (rho, beta, gamma=1/8, k, l) and applies the
/// threshold rule.
Verdict run_part_junta_tester(const DenseUnitary& u, const QubitPartition& partition,
                              const TesterConfig& cfg, unsigned jobs = 1);

/// End-to-end tolerant tester: draws the random partition of [n] into l
/// parts from the seed, then delegates to the part-junta tester. The
/// statistical contract (over seeds) is acceptance with probability at
/// least 2/3 when U is (sqrt(rho)/8 * epsilon)-close to a k-junta and
/// rejection with probability at least 2/3 when U is epsilon-far.
Verdict run_tolerant_tester(const DenseUnitary& u, const TesterConfig& cfg,
                            unsigned jobs = 1);

/// Exact number of oracle uses a run with this config performs.
std::uint64_t query_count(const TesterConfig& cfg);

}  // namespace juntalab
