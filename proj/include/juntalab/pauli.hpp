#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "juntalab/common.hpp"
#include "juntalab/sets.hpp"

namespace juntalab {

/// A Pauli string x in {0,1,2,3}^n (0=I, 1=X, 2=Y, 3=Z) naming the tensor
/// product sigma_x = sigma_{x_1} (x) ... (x) sigma_{x_n). Qubit 1 is the
/// leftmost factor (most significant bit of a basis index). All qubit
/// indices in this library are 1-based.
class PauliIndex {
 public:
  explicit PauliIndex(std::vector<std::uint8_t> digits);

  static PauliIndex identity(int n);

  /// Decodes a base-4 code; qubit 1 occupies the most significant digit.
  static PauliIndex from_code(int n, std::uint64_t code);

  /// Parses a string over {I,X,Y,Z}, e.g. "ZX".
  static PauliIndex from_string(std::string_view s);

  int num_qubits() const { return static_cast<int>(digits_.size()); }

  /// Digit for a 1-based qubit.
  std::uint8_t digit(int qubit) const;

  const std::vector<std::uint8_t>& digits() const { return digits_; }

  std::uint64_t code() const;

  /// Qubits with a non-identity factor (1-based).
  IndexSet support() const;

  std::string to_string() const;

  friend bool operator==(const PauliIndex& a, const PauliIndex& b) {
    return a.digits_ == b.digits_;
  }

 private:
  std::vector<std::uint8_t> digits_;
};

/// Pauli tensor product in one-nonzero-per-row form: row r has its single
/// nonzero at column col[r] with value val[r] (unit modulus).
struct SparsePauli {
  Eigen::VectorXi col;
  Vector val;

  Matrix dense() const;
};

/// The 2^n x 2^n matrix for sigma_x, represented sparsely.
SparsePauli pauli_matrix(const PauliIndex& x);

/// A dense n-qubit unitary with unitarity verified at construction
/// (max entrywise deviation of U^dagger U from I at most kUnitarityTol).
class DenseUnitary {
 public:
  static constexpr int kDefaultMaxQubits = 10;
  static constexpr double kUnitarityTol = 1e-10;

  explicit DenseUnitary(Matrix entries, int max_qubits = kDefaultMaxQubits);

  static DenseUnitary identity(int n);

  int num_qubits() const { return n_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

 private:
  int n_;
  Matrix entries_;
};

/// Dense table of all 4^n Pauli coefficients of an operator, indexed by
/// PauliIndex code. For unitary sources the squared magnitudes sum to 1.
class PauliSpectrum {
 public:
  PauliSpectrum(int n, Vector coeffs);

  int num_qubits() const { return n_; }
  std::uint64_t size() const { return static_cast<std::uint64_t>(coeffs_.size()); }

  Complex coeff(std::uint64_t code) const { return coeffs_(static_cast<Eigen::Index>(code)); }
  Complex coeff(const PauliIndex& x) const;
  const Vector& coeffs() const { return coeffs_; }

  /// Sum of squared coefficient magnitudes.
  double total_weight() const;

 private:
  int n_;
  Vector coeffs_;
};

/// Full Pauli decomposition of U: coefficient of sigma_x is
/// Tr(sigma_x^dagger U) / 2^n. Each coefficient costs O(2^n) via the
/// one-nonzero-per-row structure of sigma_x; jobs > 1 splits the
/// coefficient range across threads.
PauliSpectrum decompose(const DenseUnitary& u, unsigned jobs = 1);

/// Influence of the qubit set S: the spectrum weight on strings whose
/// support intersects S. Computed both directly and via the complement
/// identity (1 minus the weight of strings supported outside S); the two
/// routes must agree to 1e-9 for unitary-sourced spectra.
double influence_exact(const PauliSpectrum& spectrum, const IndexSet& s);

/// Rebuilds the dense operator from its spectrum.
Matrix reconstruct(const PauliSpectrum& spectrum);

/// Embeds a 2^|t| core matrix acting on the (ascending) qubits of t into
/// the full n-qubit space, identity on the rest.
Matrix embed_on_qubits(int n, const IndexSet& t, const Matrix& core);

/// Precomputed influence lookup over all 2^n qubit subsets, for sampling
/// paths that evaluate influences millions of times. Built with a
/// subset-sum (zeta) transform of the per-support spectrum weights.
class InfluenceTable {
 public:
  explicit InfluenceTable(const PauliSpectrum& spectrum);

  int num_qubits() const { return n_; }

  double influence(const IndexSet& s) const;

 private:
  int n_;
  std::vector<double> closed_weight_;  // index: qubit bitmask D -> weight of supp(x) subset of D
};

}  // namespace juntalab
