#include "juntalab/metric.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace juntalab {

namespace {

double sqrt_clamped(double arg) {
  if (arg < 0.0) arg = 0.0;  // guards -1e-12-scale floating-point slop
  return std::min(1.0, std::sqrt(arg));
}

}  // namespace

double dist(const DenseUnitary& a, const DenseUnitary& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("dist: dimension mismatch");
  const double n = static_cast<double>(a.dim());
  const Complex inner = (a.entries().adjoint() * b.entries()).trace();
  return sqrt_clamped(1.0 - std::abs(inner) / n);
}

Matrix partial_trace_complement(const DenseUnitary& u, const IndexSet& t) {
  const int n = u.num_qubits();
  if (t.max_element() > n)
    throw std::invalid_argument("partial_trace_complement: qubit index exceeds n");

  const auto kept = t.elements();  // ascending
  const int nk = static_cast<int>(kept.size());
  std::vector<int> traced;
  for (int q = 1; q <= n; ++q)
    if (!t.contains(q)) traced.push_back(q);
  const int nt = static_cast<int>(traced.size());

  // Basis index with qubit 1 as the most significant bit; bit position of
  // qubit q is (n - q).
  auto compose = [&](std::uint64_t kept_bits, std::uint64_t traced_bits) {
    std::uint64_t idx = 0;
    for (int i = 0; i < nk; ++i)
      if ((kept_bits >> (nk - 1 - i)) & 1)
        idx |= std::uint64_t{1} << (n - kept[static_cast<std::size_t>(i)]);
    for (int i = 0; i < nt; ++i)
      if ((traced_bits >> (nt - 1 - i)) & 1)
        idx |= std::uint64_t{1} << (n - traced[static_cast<std::size_t>(i)]);
    return idx;
  };

  const Eigen::Index out_dim = Eigen::Index{1} << nk;
  const std::uint64_t traced_dim = std::uint64_t{1} << nt;
  Matrix m = Matrix::Zero(out_dim, out_dim);
  for (Eigen::Index a = 0; a < out_dim; ++a) {
    for (Eigen::Index b = 0; b < out_dim; ++b) {
      Complex acc{0.0, 0.0};
      for (std::uint64_t x = 0; x < traced_dim; ++x)
        acc += u.entries()(static_cast<Eigen::Index>(compose(static_cast<std::uint64_t>(a), x)),
                           static_cast<Eigen::Index>(compose(static_cast<std::uint64_t>(b), x)));
      m(a, b) = acc;
    }
  }
  return m;
}

JuntaWitness nearest_junta_distance(const DenseUnitary& u, const IndexSet& t) {
  const Matrix m = partial_trace_complement(u, t);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);

  JuntaWitness w;
  w.t = t;
  w.core = svd.matrixU() * svd.matrixV().adjoint();

  // The polar core maximizes |<U, V (x) I>| (the value is the nuclear norm
  // of the partial trace), so the optimum distance is the phase-aligned
  // difference against the embedded core. Evaluating the difference
  // directly keeps full precision near zero, where the closed form
  // sqrt(1 - nuclear / 2^n) loses half the digits to cancellation.
  const Matrix embedded = embed_on_qubits(u.num_qubits(), t, w.core);
  const Complex inner = (u.entries().adjoint() * embedded).trace();
  const double mag = std::abs(inner);
  const Complex phase = (mag > 0.0) ? inner / mag : Complex{1.0, 0.0};
  const double dim = static_cast<double>(u.dim());
  w.distance = std::min(
      1.0, std::sqrt((phase * u.entries() - embedded).squaredNorm() / (2.0 * dim)));
  return w;
}

std::pair<double, JuntaWitness> dist_to_k_juntas(const DenseUnitary& u, int k) {
  const int n = u.num_qubits();
  if (k < 0 || k > n)
    throw std::invalid_argument("dist_to_k_juntas: k outside [0, n]");

  // Earlier (lexicographically smaller) subsets win ties; a later subset
  // must improve by more than floating-point noise to displace them.
  constexpr double kTieTol = 1e-12;
  JuntaWitness best;
  bool have = false;
  for (CombinationIterator it(n, k); !it.done(); it.advance()) {
    JuntaWitness w = nearest_junta_distance(u, it.current_set());
    if (!have || w.distance < best.distance - kTieTol) {
      best = std::move(w);
      have = true;
    }
  }
  return {best.distance, best};
}

}  // namespace juntalab
