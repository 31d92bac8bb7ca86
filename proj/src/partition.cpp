#include "juntalab/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace juntalab {

QubitPartition::QubitPartition(int n, int l, std::vector<int> assignment)
    : n_(n), l_(l), assignment_(std::move(assignment)) {
  if (n_ < 1) throw std::invalid_argument("QubitPartition: n < 1");
  if (l_ < 1) throw std::invalid_argument("QubitPartition: l < 1");
  if (l_ > IndexSet::kMaxUniverse)
    throw ResourceError("QubitPartition: part count " + std::to_string(l_) +
                        " exceeds cap of " + std::to_string(IndexSet::kMaxUniverse));
  if (assignment_.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("QubitPartition: assignment length != n");
  for (int label : assignment_)
    if (label < 1 || label > l_)
      throw std::invalid_argument("QubitPartition: label outside [1, l]");
}

int QubitPartition::part_of(int qubit) const {
  if (qubit < 1 || qubit > n_)
    throw std::invalid_argument("QubitPartition::part_of: qubit outside [1, n]");
  return assignment_[static_cast<std::size_t>(qubit - 1)];
}

QubitPartition random_partition(int n, int l, std::uint64_t seed) {
  if (l < 1) throw std::invalid_argument("random_partition: l < 1");
  CounterRng rng(CounterRng::derive(seed, 0x70617274));
  std::vector<int> assignment(static_cast<std::size_t>(n));
  for (auto& label : assignment)
    label = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(l)));
  return QubitPartition(n, l, std::move(assignment));
}

IndexSet phi(const QubitPartition& partition, const IndexSet& parts) {
  if (parts.max_element() > partition.num_parts())
    throw std::invalid_argument("phi: part index exceeds l");
  IndexSet qubits;
  for (int q = 1; q <= partition.num_qubits(); ++q)
    if (parts.contains(partition.part_of(q))) qubits.insert(q);
  return qubits;
}

IndexSet rho_biased_subset(const IndexSet& s, double rho, CounterRng& rng) {
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("rho_biased_subset: rho outside [0, 1]");
  IndexSet out;
  for (int e : s.elements())
    if (rng.bernoulli(rho)) out.insert(e);
  return out;
}

double rho_subset_influence_exact(const PauliSpectrum& spectrum,
                                  const QubitPartition& partition, const IndexSet& s,
                                  double rho) {
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("rho_subset_influence_exact: rho outside [0, 1]");
  const auto elems = s.elements();
  const int sz = static_cast<int>(elems.size());
  if (sz > 20)
    throw ResourceError("rho_subset_influence_exact: |S| = " + std::to_string(sz) +
                        " exceeds the 2^20 enumeration bound");

  double expectation = 0.0;
  const std::uint64_t count = std::uint64_t{1} << sz;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    IndexSet subset;
    int kept = 0;
    for (int i = 0; i < sz; ++i) {
      if ((bits >> i) & 1) {
        subset.insert(elems[static_cast<std::size_t>(i)]);
        ++kept;
      }
    }
    const double weight = std::pow(rho, kept) * std::pow(1.0 - rho, sz - kept);
    if (weight == 0.0) continue;
    expectation += weight * influence_exact(spectrum, phi(partition, subset));
  }
  return expectation;
}

double rho_subset_influence_exact(const DenseUnitary& u, const QubitPartition& partition,
                                  const IndexSet& s, double rho) {
  return rho_subset_influence_exact(decompose(u), partition, s, rho);
}

}  // namespace juntalab
