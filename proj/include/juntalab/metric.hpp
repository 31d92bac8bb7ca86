#pragma once

#include <utility>

#include "juntalab/common.hpp"
#include "juntalab/pauli.hpp"
#include "juntalab/sets.hpp"

namespace juntalab {

/// Nearest-junta optimum for a fixed coordinate set T: the achieved
/// distance and the 2^|T| core unitary realizing it.
struct JuntaWitness {
  IndexSet t;
  double distance = 0.0;
  Matrix core;  // unitary acting on the qubits in t, ascending order
};

/// Phase-invariant normalized Frobenius distance between equal-dimension
/// operators: sqrt(1 - |<A,B>| / N) with N the dimension, clamped to [0,1].
double dist(const DenseUnitary& a, const DenseUnitary& b);

/// Exact distance from U to the set of juntas on T, via the partial trace
/// over the complement of T: distance = sqrt(1 - nuclear_norm(M) / 2^n),
/// core = polar unitary of M. This is the analytic minimum of
/// dist(U, V (x) I) over unitaries V acting on T.
JuntaWitness nearest_junta_distance(const DenseUnitary& u, const IndexSet& t);

/// Exhaustive minimum of nearest_junta_distance over all size-k subsets.
/// Ties broken toward the lexicographically smallest T.
std::pair<double, JuntaWitness> dist_to_k_juntas(const DenseUnitary& u, int k);

/// Partial trace of U over the complement of T (result indexed by the
/// qubits of T in ascending order). Exposed for reuse by tests.
Matrix partial_trace_complement(const DenseUnitary& u, const IndexSet& t);

}  // namespace juntalab
