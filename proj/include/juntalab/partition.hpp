#pragma once

#include <cstdint>
#include <vector>

#include "juntalab/common.hpp"
#include "juntalab/pauli.hpp"
#include "juntalab/rng.hpp"
#include "juntalab/sets.hpp"

namespace juntalab {

/// Assignment of the n qubits into l labeled parts (labels 1..l). Parts
/// may be empty; every qubit carries exactly one label.
class QubitPartition {
 public:
  QubitPartition(int n, int l, std::vector<int> assignment);

  int num_qubits() const { return n_; }
  int num_parts() const { return l_; }

  /// Part label of a 1-based qubit.
  int part_of(int qubit) const;

  const std::vector<int>& assignment() const { return assignment_; }

  friend bool operator==(const QubitPartition& a, const QubitPartition& b) {
    return a.n_ == b.n_ && a.l_ == b.l_ && a.assignment_ == b.assignment_;
  }

 private:
  int n_;
  int l_;
  std::vector<int> assignment_;
};

/// Uniform random partition: each qubit lands in one of l parts
/// independently, driven by the seed.
QubitPartition random_partition(int n, int l, std::uint64_t seed);

/// Union of the named parts: all qubits whose label lies in parts.
IndexSet phi(const QubitPartition& partition, const IndexSet& parts);

/// Keeps each element of s independently with probability rho. rho is
/// accepted on [0, 1]; the endpoints are degenerate (empty set / s) and
/// intended for tests.
IndexSet rho_biased_subset(const IndexSet& s, double rho, CounterRng& rng);

/// Exact expected influence of phi(S') over rho-biased subsets S' of s,
/// by full 2^|s| enumeration with weights rho^|S'| (1-rho)^(|s|-|S'|).
/// Enumeration is capped at |s| <= 20.
double rho_subset_influence_exact(const DenseUnitary& u, const QubitPartition& partition,
                                  const IndexSet& s, double rho);

/// Same, reusing an existing spectrum of u.
double rho_subset_influence_exact(const PauliSpectrum& spectrum,
                                  const QubitPartition& partition, const IndexSet& s,
                                  double rho);

}  // namespace juntalab
