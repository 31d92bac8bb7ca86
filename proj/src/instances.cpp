#include "juntalab/instances.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "juntalab/io.hpp"
#include "juntalab/metric.hpp"
#include "juntalab/rng.hpp"

namespace juntalab {

namespace {

Matrix ginibre(Eigen::Index dim, CounterRng& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      g(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return g;
}

Matrix haar_matrix(Eigen::Index dim, CounterRng& rng) {
  if (dim == 1) {
    const double theta = 2.0 * std::numbers::pi * rng.next_double();
    Matrix u(1, 1);
    u(0, 0) = Complex(std::cos(theta), std::sin(theta));
    return u;
  }
  const Matrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= (mag > 0.0) ? d / mag : Complex{1.0, 0.0};
  }
  return q;
}

}  // namespace

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kExactJunta: return "exact_junta";
    case InstanceKind::kPerturbedJunta: return "perturbed_junta";
    case InstanceKind::kHaarRandom: return "haar_random";
    case InstanceKind::kLabeledFile: return "labeled_file";
  }
  return "unknown";
}

InstanceKind instance_kind_from_string(const std::string& name) {
  if (name == "exact_junta") return InstanceKind::kExactJunta;
  if (name == "perturbed_junta") return InstanceKind::kPerturbedJunta;
  if (name == "haar_random" || name == "haar") return InstanceKind::kHaarRandom;
  if (name == "labeled_file") return InstanceKind::kLabeledFile;
  throw std::invalid_argument("unknown instance kind: " + name);
}

DenseUnitary gen_exact_junta(int n, const IndexSet& t, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_exact_junta: n < 1");
  if (n > DenseUnitary::kDefaultMaxQubits)
    throw ResourceError("gen_exact_junta: n exceeds the qubit cap");
  if (t.max_element() > n)
    throw std::invalid_argument("gen_exact_junta: junta qubit exceeds n");
  CounterRng rng(CounterRng::derive(seed, 0x6a756e7461));  // stream tag
  const Eigen::Index core_dim = Eigen::Index{1} << t.size();
  const Matrix core = haar_matrix(core_dim, rng);
  return DenseUnitary(embed_on_qubits(n, t, core));
}

DenseUnitary gen_perturbed_junta(int n, const IndexSet& t, double target_distance,
                                 std::uint64_t seed) {
  if (target_distance < 0.0 || target_distance > 0.9)
    throw std::invalid_argument("gen_perturbed_junta: target_distance outside [0, 0.9]");
  const DenseUnitary base = gen_exact_junta(n, t, seed);
  if (target_distance == 0.0) return base;

  const int k = t.size();
  const Eigen::Index dim = Eigen::Index{1} << n;

  CounterRng rng(CounterRng::derive(seed, 0x70657274));
  Matrix g = ginibre(dim, rng);
  Matrix h = (g + g.adjoint()) / 2.0;
  h /= std::sqrt(h.squaredNorm());  // unit Frobenius norm

  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXd lambda = eig.eigenvalues();
  const Matrix& v = eig.eigenvectors();

  auto candidate = [&](double delta) {
    Vector phase(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double a = delta * lambda(i);
      phase(i) = Complex(std::cos(a), std::sin(a));
    }
    return DenseUnitary((v * phase.asDiagonal() * v.adjoint()) * base.entries());
  };
  auto dist_of = [&](double delta) {
    return dist_to_k_juntas(candidate(delta), k).first;
  };

  constexpr double kBand = 0.005;
  constexpr int kMaxSteps = 60;

  // Find an upper bracket, then bisect; the distance is continuous in
  // delta and 0 at delta = 0.
  double lo = 0.0;
  double hi = 0.5;
  int steps = 0;
  while (dist_of(hi) < target_distance) {
    lo = hi;
    hi *= 2.0;
    if (++steps >= kMaxSteps || hi > 64.0)
      throw GenerationError("gen_perturbed_junta: target distance unreachable");
  }
  for (; steps < kMaxSteps; ++steps) {
    const double mid = 0.5 * (lo + hi);
    const double d = dist_of(mid);
    if (std::abs(d - target_distance) <= kBand * 0.8) return candidate(mid);
    if (d < target_distance)
      lo = mid;
    else
      hi = mid;
  }
  throw GenerationError("gen_perturbed_junta: calibration did not converge in " +
                        std::to_string(kMaxSteps) + " steps");
}

DenseUnitary gen_haar(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_haar: n < 1");
  if (n > DenseUnitary::kDefaultMaxQubits)
    throw ResourceError("gen_haar: n exceeds the qubit cap");
  CounterRng rng(CounterRng::derive(seed, 0x68616172));
  return DenseUnitary(haar_matrix(Eigen::Index{1} << n, rng));
}

DenseUnitary make_instance(const InstanceSpec& spec) {
  switch (spec.kind) {
    case InstanceKind::kExactJunta:
      return gen_exact_junta(spec.n, spec.t, spec.seed);
    case InstanceKind::kPerturbedJunta:
      return gen_perturbed_junta(spec.n, spec.t, spec.target_distance, spec.seed);
    case InstanceKind::kHaarRandom:
      return gen_haar(spec.n, spec.seed);
    case InstanceKind::kLabeledFile:
      return load_unitary(spec.path);
  }
  throw std::invalid_argument("make_instance: bad kind");
}

}  // namespace juntalab
