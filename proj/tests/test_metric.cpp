#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "juntalab/instances.hpp"
#include "juntalab/metric.hpp"
#include "juntalab/pauli.hpp"
#include "juntalab/rng.hpp"

using namespace juntalab;

namespace {

DenseUnitary make_cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return DenseUnitary(std::move(m));
}

DenseUnitary phase_times(const DenseUnitary& u, double theta) {
  return DenseUnitary(Complex(std::cos(theta), std::sin(theta)) * u.entries());
}

/// Defining minimization over a 10^4-point phase grid; the grid is the
/// independent route the closed form is checked against.
double dist_by_grid(const DenseUnitary& a, const DenseUnitary& b) {
  const double n = static_cast<double>(a.dim());
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 10000; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / 10000.0;
    const Complex phase(std::cos(theta), std::sin(theta));
    const double val =
        std::sqrt((phase * a.entries() - b.entries()).squaredNorm() / (2.0 * n));
    best = std::min(best, val);
  }
  return best;
}

}  // namespace

TEST_CASE("distance basics", "[metric]") {
  const DenseUnitary u = gen_haar(2, 11);
  // The closed form loses half the digits near zero, so allow 1e-6 here.
  REQUIRE(dist(u, u) == Catch::Approx(0.0).margin(1e-6));
  REQUIRE(dist(u, phase_times(u, 1.234)) == Catch::Approx(0.0).margin(1e-6));

  // Trace of X (x) I vanishes, so identity and X (x) I are maximally far.
  const DenseUnitary id = DenseUnitary::identity(2);
  Matrix xi = Matrix::Zero(4, 4);
  xi(0, 2) = xi(1, 3) = xi(2, 0) = xi(3, 1) = 1.0;
  REQUIRE(dist(id, DenseUnitary(std::move(xi))) == Catch::Approx(1.0));

  REQUIRE_THROWS_AS(dist(DenseUnitary::identity(1), id), std::invalid_argument);
}

TEST_CASE("closed form matches the phase-grid minimization", "[metric]") {
  CounterRng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(2));
    const DenseUnitary a = gen_haar(n, 100 + static_cast<std::uint64_t>(trial));
    const DenseUnitary b = gen_haar(n, 600 + static_cast<std::uint64_t>(trial));
    REQUIRE(dist(a, b) == Catch::Approx(dist_by_grid(a, b)).margin(1e-6));
  }
}

TEST_CASE("distance symmetry", "[metric]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseUnitary a = gen_haar(3, 300 + seed);
    const DenseUnitary b = gen_haar(3, 800 + seed);
    REQUIRE(dist(a, b) == Catch::Approx(dist(b, a)).margin(1e-12));
  }
}

TEST_CASE("nearest-junta distance on known cases", "[metric]") {
  SECTION("an embedded junta is at distance zero from its own coordinates") {
    const DenseUnitary u = gen_exact_junta(4, IndexSet{2, 4}, 21);
    const JuntaWitness w = nearest_junta_distance(u, IndexSet{2, 4});
    REQUIRE(w.distance == Catch::Approx(0.0).margin(1e-9));
    const Matrix gram = w.core.adjoint() * w.core;
    REQUIRE((gram - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
  }

  SECTION("CNOT against one retained qubit") {
    const JuntaWitness w = nearest_junta_distance(make_cnot(), IndexSet{1});
    REQUIRE(w.distance == Catch::Approx(std::sqrt(0.5)).margin(1e-12));
  }

  SECTION("keeping every qubit gives distance zero") {
    const JuntaWitness w = nearest_junta_distance(make_cnot(), IndexSet{1, 2});
    REQUIRE(w.distance == Catch::Approx(0.0).margin(1e-12));
  }

  SECTION("witness core is unitary on random inputs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DenseUnitary u = gen_haar(3, 4200 + seed);
      const JuntaWitness w = nearest_junta_distance(u, IndexSet{1, 3});
      const Matrix gram = w.core.adjoint() * w.core;
      REQUIRE((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
              1e-9);
    }
  }
}

TEST_CASE("exhaustive junta distance", "[metric]") {
  SECTION("a single-qubit junta is found at k = 1") {
    const DenseUnitary u = gen_exact_junta(4, IndexSet{3}, 17);
    const auto [d, w] = dist_to_k_juntas(u, 1);
    REQUIRE(d == Catch::Approx(0.0).margin(1e-9));
  }

  SECTION("CNOT at k = 1 with lexicographic tie-break") {
    const auto [d, w] = dist_to_k_juntas(make_cnot(), 1);
    REQUIRE(d == Catch::Approx(std::sqrt(0.5)).margin(1e-12));
    REQUIRE(w.t == IndexSet{1});  // {1} and {2} tie; smaller wins
  }

  SECTION("k = n always reaches zero") {
    const DenseUnitary u = gen_haar(3, 23);
    const auto [d, w] = dist_to_k_juntas(u, 3);
    REQUIRE(d == Catch::Approx(0.0).margin(1e-12));
  }

  SECTION("k out of range is rejected") {
    REQUIRE_THROWS_AS(dist_to_k_juntas(make_cnot(), 3), std::invalid_argument);
  }
}

TEST_CASE("partial trace inverts embedding up to the traced dimension", "[metric]") {
  // Tr_complement(V embedded on T) = 2^(n-|T|) V, for any coordinate set.
  CounterRng rng(53);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(3));
    IndexSet t;
    while (t.empty())
      for (int q = 1; q <= n; ++q)
        if (rng.bernoulli(0.5)) t.insert(q);
    const DenseUnitary u = gen_exact_junta(n, t, 7700 + static_cast<std::uint64_t>(trial));
    const Matrix m = partial_trace_complement(u, t);
    const double scale = static_cast<double>(Eigen::Index{1} << (n - t.size()));
    const Matrix gram = (m / scale).adjoint() * (m / scale);
    REQUIRE((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
            1e-9);
  }
}

TEST_CASE("close juntas have small outside influence", "[metric]") {
  // Certified-distance instances: the outside influence may not exceed
  // twice the squared certified distance.
  CounterRng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_below(2));
    const int kk = 1 + static_cast<int>(rng.next_below(2));  // < n, so targets stay reachable
    IndexSet t;
    while (t.size() < kk) t.insert(1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))));
    const double target = 0.05 + 0.3 * rng.next_double();
    const DenseUnitary u =
        gen_perturbed_junta(n, t, target, 5000 + static_cast<std::uint64_t>(trial));

    const double eps = nearest_junta_distance(u, t).distance;
    const double outside = influence_exact(decompose(u), t.complement(n));
    REQUIRE(outside <= 2.0 * eps * eps + 1e-9);
  }
}

TEST_CASE("small outside influence bounds the junta distance", "[metric]") {
  // Contrapositive consistency: the exhaustive distance is at most
  // sqrt(2 * min outside influence) over all candidate coordinate sets.
  CounterRng rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_below(2));
    const int kk = 1 + static_cast<int>(rng.next_below(2));

    DenseUnitary u = [&] {
      const auto choice = trial % 3;
      if (choice == 0) return gen_haar(n, 6100 + static_cast<std::uint64_t>(trial));
      IndexSet t;
      while (t.size() < kk) t.insert(1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))));
      if (choice == 1) return gen_exact_junta(n, t, 6200 + static_cast<std::uint64_t>(trial));
      return gen_perturbed_junta(n, t, 0.15, 6300 + static_cast<std::uint64_t>(trial));
    }();

    const PauliSpectrum spec = decompose(u);
    double min_outside = 1.0;
    for (int size = 0; size <= kk; ++size)
      for (CombinationIterator it(n, size); !it.done(); it.advance())
        min_outside = std::min(min_outside,
                               influence_exact(spec, it.current_set().complement(n)));

    const double eps = std::sqrt(2.0 * min_outside);
    REQUIRE(dist_to_k_juntas(u, kk).first <= eps + 1e-9);
  }
}
