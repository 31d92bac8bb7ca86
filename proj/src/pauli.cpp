#include "juntalab/pauli.hpp"

#include <cmath>
#include <stdexcept>

#include "juntalab/parallel.hpp"

namespace juntalab {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit_range(int qubit, int n, const char* where) {
  if (qubit < 1 || qubit > n)
    throw std::invalid_argument(std::string(where) + ": qubit " +
                                std::to_string(qubit) + " outside [1, " +
                                std::to_string(n) + "]");
}

}  // namespace

PauliIndex::PauliIndex(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  if (digits_.empty())
    throw std::invalid_argument("PauliIndex: empty digit sequence");
  for (auto d : digits_)
    if (d > 3)
      throw std::invalid_argument("PauliIndex: digit outside {0,1,2,3}");
}

PauliIndex PauliIndex::identity(int n) {
  if (n < 1) throw std::invalid_argument("PauliIndex::identity: n < 1");
  return PauliIndex(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0));
}

PauliIndex PauliIndex::from_code(int n, std::uint64_t code) {
  if (n < 1) throw std::invalid_argument("PauliIndex::from_code: n < 1");
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(n));
  for (int q = n; q >= 1; --q) {
    digits[static_cast<std::size_t>(q - 1)] = static_cast<std::uint8_t>(code & 3);
    code >>= 2;
  }
  if (code != 0)
    throw std::invalid_argument("PauliIndex::from_code: code exceeds 4^n");
  return PauliIndex(std::move(digits));
}

PauliIndex PauliIndex::from_string(std::string_view s) {
  std::vector<std::uint8_t> digits;
  digits.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'I': digits.push_back(0); break;
      case 'X': digits.push_back(1); break;
      case 'Y': digits.push_back(2); break;
      case 'Z': digits.push_back(3); break;
      default:
        throw std::invalid_argument("PauliIndex::from_string: bad character");
    }
  }
  return PauliIndex(std::move(digits));
}

std::uint8_t PauliIndex::digit(int qubit) const {
  check_qubit_range(qubit, num_qubits(), "PauliIndex::digit");
  return digits_[static_cast<std::size_t>(qubit - 1)];
}

std::uint64_t PauliIndex::code() const {
  std::uint64_t c = 0;
  for (auto d : digits_) c = (c << 2) | d;
  return c;
}

IndexSet PauliIndex::support() const {
  IndexSet s;
  for (int q = 1; q <= num_qubits(); ++q)
    if (digits_[static_cast<std::size_t>(q - 1)] != 0) s.insert(q);
  return s;
}

std::string PauliIndex::to_string() const {
  static constexpr char kNames[4] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  s.reserve(digits_.size());
  for (auto d : digits_) s.push_back(kNames[d]);
  return s;
}

Matrix SparsePauli::dense() const {
  const auto dim = col.size();
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) m(r, col(r)) = val(r);
  return m;
}

SparsePauli pauli_matrix(const PauliIndex& x) {
  const int n = x.num_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;

  // Column index: flip the bits where the digit is X or Y. Value: product
  // of per-qubit phases (Y contributes -i on bit 0 and +i on bit 1, Z a
  // sign on bit 1).
  std::uint64_t flip_mask = 0;
  for (int q = 1; q <= n; ++q) {
    const std::uint8_t d = x.digit(q);
    if (d == 1 || d == 2) flip_mask |= std::uint64_t{1} << (n - q);
  }

  SparsePauli out;
  out.col.resize(dim);
  out.val.resize(dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    Complex v{1.0, 0.0};
    for (int q = 1; q <= n; ++q) {
      const int bit = static_cast<int>((static_cast<std::uint64_t>(r) >> (n - q)) & 1);
      switch (x.digit(q)) {
        case 0: break;
        case 1: break;
        case 2: v *= (bit == 0) ? -kI : kI; break;
        case 3: v *= (bit == 0) ? 1.0 : -1.0; break;
      }
    }
    out.col(r) = static_cast<int>(static_cast<std::uint64_t>(r) ^ flip_mask);
    out.val(r) = v;
  }
  return out;
}

DenseUnitary::DenseUnitary(Matrix entries, int max_qubits) : entries_(std::move(entries)) {
  const Eigen::Index dim = entries_.rows();
  if (dim < 2 || entries_.cols() != dim)
    throw std::invalid_argument("DenseUnitary: matrix must be square with dim >= 2");
  if ((dim & (dim - 1)) != 0)
    throw std::invalid_argument("DenseUnitary: dimension is not a power of two");
  n_ = std::countr_zero(static_cast<std::uint64_t>(dim));
  if (n_ > max_qubits)
    throw ResourceError("DenseUnitary: " + std::to_string(n_) +
                        " qubits exceeds cap of " + std::to_string(max_qubits));
  const double dev = (entries_.adjoint() * entries_ - Matrix::Identity(dim, dim))
                         .cwiseAbs()
                         .maxCoeff();
  if (dev > kUnitarityTol)
    throw std::invalid_argument(
        "DenseUnitary: not unitary (max entrywise |U^H U - I| = " +
        std::to_string(dev) + ")");
}

DenseUnitary DenseUnitary::identity(int n) {
  if (n < 1) throw std::invalid_argument("DenseUnitary::identity: n < 1");
  if (n > kDefaultMaxQubits)
    throw ResourceError("DenseUnitary::identity: " + std::to_string(n) +
                        " qubits exceeds cap of " + std::to_string(kDefaultMaxQubits));
  const Eigen::Index dim = Eigen::Index{1} << n;
  return DenseUnitary(Matrix::Identity(dim, dim));
}

PauliSpectrum::PauliSpectrum(int n, Vector coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (n_ < 1) throw std::invalid_argument("PauliSpectrum: n < 1");
  const auto expected = Eigen::Index{1} << (2 * n_);
  if (coeffs_.size() != expected)
    throw std::invalid_argument("PauliSpectrum: expected 4^n coefficients");
}

Complex PauliSpectrum::coeff(const PauliIndex& x) const {
  if (x.num_qubits() != n_)
    throw std::invalid_argument("PauliSpectrum::coeff: qubit count mismatch");
  return coeff(x.code());
}

double PauliSpectrum::total_weight() const { return coeffs_.squaredNorm(); }

PauliSpectrum decompose(const DenseUnitary& u, unsigned jobs) {
  const int n = u.num_qubits();
  const std::uint64_t table_size = std::uint64_t{1} << (2 * n);
  const Matrix& m = u.entries();
  const double scale = 1.0 / static_cast<double>(Eigen::Index{1} << n);

  Vector coeffs(static_cast<Eigen::Index>(table_size));
  parallel_for(table_size, jobs, [&](std::size_t code) {
    const SparsePauli sp = pauli_matrix(PauliIndex::from_code(n, code));
    Complex acc{0.0, 0.0};
    for (Eigen::Index r = 0; r < sp.col.size(); ++r)
      acc += std::conj(sp.val(r)) * m(r, sp.col(r));
    coeffs(static_cast<Eigen::Index>(code)) = acc * scale;
  });
  return PauliSpectrum(n, std::move(coeffs));
}

double influence_exact(const PauliSpectrum& spectrum, const IndexSet& s) {
  const int n = spectrum.num_qubits();
  if (s.max_element() > n)
    throw std::invalid_argument("influence_exact: qubit index exceeds n");
  if (s.empty()) return 0.0;

  const std::uint64_t s_mask = s.mask64();
  const std::uint64_t table_size = spectrum.size();

  double intersecting = 0.0;
  double outside = 0.0;
  for (std::uint64_t code = 0; code < table_size; ++code) {
    // Support bitmask of the string: bit (q-1) set iff digit q != 0.
    std::uint64_t supp = 0;
    std::uint64_t c = code;
    for (int q = n; q >= 1; --q) {
      if ((c & 3) != 0) supp |= std::uint64_t{1} << (q - 1);
      c >>= 2;
    }
    const double w = std::norm(spectrum.coeff(code));
    if ((supp & s_mask) != 0)
      intersecting += w;
    else
      outside += w;
  }

  const double via_complement = 1.0 - outside;
  if (std::abs(intersecting - via_complement) > 1e-9)
    throw std::logic_error(
        "influence_exact: direct and complement routes disagree (spectrum "
        "not unit-normalized?)");
  return std::min(1.0, std::max(0.0, intersecting));
}

Matrix reconstruct(const PauliSpectrum& spectrum) {
  const int n = spectrum.num_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint64_t code = 0; code < spectrum.size(); ++code) {
    const Complex c = spectrum.coeff(code);
    if (c == Complex{0.0, 0.0}) continue;
    const SparsePauli sp = pauli_matrix(PauliIndex::from_code(n, code));
    for (Eigen::Index r = 0; r < dim; ++r) m(r, sp.col(r)) += c * sp.val(r);
  }
  return m;
}

Matrix embed_on_qubits(int n, const IndexSet& t, const Matrix& core) {
  if (n < 1) throw std::invalid_argument("embed_on_qubits: n < 1");
  if (t.max_element() > n)
    throw std::invalid_argument("embed_on_qubits: qubit index exceeds n");
  const auto kept = t.elements();
  const int nk = static_cast<int>(kept.size());
  if (core.rows() != (Eigen::Index{1} << nk) || core.cols() != core.rows())
    throw std::invalid_argument("embed_on_qubits: core dimension mismatch");

  const Eigen::Index dim = Eigen::Index{1} << n;
  const std::uint64_t core_dim = std::uint64_t{1} << nk;
  Matrix u = Matrix::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    std::uint64_t row_t = 0;
    for (int i = 0; i < nk; ++i)
      row_t = (row_t << 1) |
              ((static_cast<std::uint64_t>(row) >> (n - kept[static_cast<std::size_t>(i)])) & 1);
    for (std::uint64_t col_t = 0; col_t < core_dim; ++col_t) {
      std::uint64_t col = static_cast<std::uint64_t>(row);
      for (int i = 0; i < nk; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (n - kept[static_cast<std::size_t>(i)]);
        if ((col_t >> (nk - 1 - i)) & 1)
          col |= bit;
        else
          col &= ~bit;
      }
      u(row, static_cast<Eigen::Index>(col)) =
          core(static_cast<Eigen::Index>(row_t), static_cast<Eigen::Index>(col_t));
    }
  }
  return u;
}

InfluenceTable::InfluenceTable(const PauliSpectrum& spectrum)
    : n_(spectrum.num_qubits()),
      closed_weight_(std::size_t{1} << n_, 0.0) {
  // Accumulate weight by support mask, then subset-sum so that
  // closed_weight_[D] covers every support contained in D.
  for (std::uint64_t code = 0; code < spectrum.size(); ++code) {
    std::uint64_t supp = 0;
    std::uint64_t c = code;
    for (int q = n_; q >= 1; --q) {
      if ((c & 3) != 0) supp |= std::uint64_t{1} << (q - 1);
      c >>= 2;
    }
    closed_weight_[supp] += std::norm(spectrum.coeff(code));
  }
  for (int q = 0; q < n_; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t d = 0; d < closed_weight_.size(); ++d)
      if (d & bit) closed_weight_[d] += closed_weight_[d & ~bit];
  }
}

double InfluenceTable::influence(const IndexSet& s) const {
  if (s.max_element() > n_)
    throw std::invalid_argument("InfluenceTable::influence: qubit index exceeds n");
  const std::uint64_t full = (std::uint64_t{1} << n_) - 1;
  const std::uint64_t outside_mask = full & ~s.mask64();
  const double inf = 1.0 - closed_weight_[outside_mask];
  return std::min(1.0, std::max(0.0, inf));
}

}  // namespace juntalab
