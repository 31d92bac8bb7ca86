#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "juntalab/common.hpp"
#include "juntalab/pauli.hpp"
#include "juntalab/rng.hpp"
#include "juntalab/sets.hpp"

namespace juntalab {

/// Thread-safe tally of oracle uses of U. One unit is charged per
/// prepared state / per sampled bit.
class QueryCounter {
 public:
  void add(std::uint64_t k = 1) { count_.fetch_add(k, std::memory_order_relaxed); }
  std::uint64_t value() const { return count_.load(std::memory_order_relaxed); }
  void reset() { count_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

/// State obtained by applying U to the first halves of n EPR pairs:
/// amplitude (1/sqrt(2^n)) U[i,j] on basis state |i>|j> over 2n qubits.
/// Qubit l (1-based, l <= n) is paired with qubit l+n.
class CjState {
 public:
  static CjState from_unitary(const DenseUnitary& u);

  int num_qubits() const { return n_; }

  /// Length-4^n amplitude vector, index (i << n) | j.
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  CjState(int n, Vector amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {}
  int n_;
  Vector amplitudes_;
};

/// Prepares the CJ state of U (one oracle use when a counter is supplied).
CjState build_cj(const DenseUnitary& u);
CjState build_cj(const DenseUnitary& u, QueryCounter& counter);

/// Squared norm of the CJ state after projecting every pair (l, l+n),
/// l in S, onto the EPR state. Equals 1 minus the influence of S on U.
double epr_projection_probability(const CjState& state, const IndexSet& s);

enum class BackendMode { kStatevector, kAnalytic };

const char* to_string(BackendMode mode);
BackendMode backend_from_string(const std::string& name);

/// Single-query influence sampler: draws a bit X with E[X] equal to the
/// influence of the queried qubit set.
///
/// statevector mode prepares the CJ state and samples the Bell outcome of
/// each queried pair in sequence (EPR marginal, then conditional
/// projection), returning 0 only when every pair lands on EPR. analytic
/// mode draws Bernoulli(influence) from a precomputed spectrum, which is
/// the same law; it still charges one query per bit so complexity
/// accounting matches. Both modes take their randomness from caller-
/// visible counter streams, so shots are reproducible and order-free.
class InfluenceSampler {
 public:
  InfluenceSampler(const DenseUnitary& u, BackendMode mode, std::uint64_t seed = 0,
                   unsigned jobs = 1);

  /// Analytic sampler over a spectrum the caller already computed.
  InfluenceSampler(const PauliSpectrum& spectrum, std::uint64_t seed = 0);

  BackendMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  int num_qubits() const { return n_; }

  /// Draws one bit using an externally derived stream.
  int sample_bit(const IndexSet& s, CounterRng& rng) const;

  /// Draws one bit on the substream (seed, shot).
  int sample_bit(const IndexSet& s, std::uint64_t shot) const;

  std::uint64_t queries() const { return counter_.value(); }
  void reset_queries() { counter_.reset(); }

  /// Exact influence from the analytic table (analytic mode only).
  double exact_influence(const IndexSet& s) const;

 private:
  int n_;
  BackendMode mode_;
  std::uint64_t seed_;
  std::optional<InfluenceTable> influence_;  // analytic
  std::optional<CjState> cj_;                // statevector
  mutable QueryCounter counter_;
};

}  // namespace juntalab
