#pragma once

#include <cstdint>
#include <string>

#include "juntalab/common.hpp"
#include "juntalab/pauli.hpp"
#include "juntalab/sets.hpp"

namespace juntalab {

enum class InstanceKind { kExactJunta, kPerturbedJunta, kHaarRandom, kLabeledFile };

const char* to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(const std::string& name);

/// Recipe for a benchmark unitary. The seed fully determines the matrix
/// (bit-for-bit in a fixed floating-point environment).
struct InstanceSpec {
  InstanceKind kind = InstanceKind::kHaarRandom;
  int n = 1;
  IndexSet t;                    // junta coordinates (junta kinds)
  double target_distance = 0.0;  // perturbed kind only
  std::uint64_t seed = 0;
  std::string path;              // labeled_file kind only
};

/// Haar-random unitary on T tensored with identity elsewhere.
DenseUnitary gen_exact_junta(int n, const IndexSet& t, std::uint64_t seed);

/// exp(i delta H) * junta with a seeded unit-Frobenius random Hermitian H;
/// delta is calibrated by bisection until the exhaustive distance to
/// |T|-juntas lands within 0.005 of target_distance. Throws
/// GenerationError when 60 bisection steps cannot reach the band.
DenseUnitary gen_perturbed_junta(int n, const IndexSet& t, double target_distance,
                                 std::uint64_t seed);

/// Haar-random n-qubit unitary (QR of a complex Ginibre matrix with the
/// R-diagonal phase correction).
DenseUnitary gen_haar(int n, std::uint64_t seed);

/// Dispatches on spec.kind; kLabeledFile loads the unitary JSON at spec.path.
DenseUnitary make_instance(const InstanceSpec& spec);

}  // namespace juntalab
