#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "juntalab/cj.hpp"
#include "juntalab/instances.hpp"
#include "juntalab/parallel.hpp"
#include "juntalab/pauli.hpp"
#include "juntalab/rng.hpp"
#include "oracles.hpp"

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

DenseUnitary make_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return DenseUnitary(std::move(m));
}

DenseUnitary make_x_tensor_i() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 2) = 1.0;
  m(1, 3) = 1.0;
  m(2, 0) = 1.0;
  m(3, 1) = 1.0;
  return DenseUnitary(std::move(m));
}

double sample_mean(const InfluenceSampler& sampler, const IndexSet& s, std::uint64_t shots,
                   std::uint64_t seed_base = 0) {
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < shots; ++i)
    ones += static_cast<std::uint64_t>(sampler.sample_bit(s, seed_base + i));
  return static_cast<double>(ones) / static_cast<double>(shots);
}

}  // namespace

TEST_CASE("CJ state amplitudes", "[cj]") {
  SECTION("identity yields the EPR pair") {
    const CjState state = build_cj(DenseUnitary::identity(1));
    const double r = 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(state.amplitudes()(0) - Complex{r, 0.0}) < 1e-15);  // |00>
    REQUIRE(std::abs(state.amplitudes()(3) - Complex{r, 0.0}) < 1e-15);  // |11>
    REQUIRE(std::abs(state.amplitudes()(1)) < 1e-15);
    REQUIRE(std::abs(state.amplitudes()(2)) < 1e-15);
  }

  SECTION("X swaps the pair branches") {
    const CjState state = build_cj(make_x());
    const double r = 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(state.amplitudes()(1) - Complex{r, 0.0}) < 1e-15);  // |01>
    REQUIRE(std::abs(state.amplitudes()(2) - Complex{r, 0.0}) < 1e-15);  // |10>
  }

  SECTION("CNOT has four quarter-weight amplitudes at its matrix positions") {
    const CjState state = build_cj(make_cnot());
    REQUIRE(state.amplitudes().squaredNorm() == Catch::Approx(1.0).margin(1e-12));
    int half_count = 0;
    for (Eigen::Index idx = 0; idx < state.amplitudes().size(); ++idx) {
      const double mag = std::abs(state.amplitudes()(idx));
      if (mag > 1e-15) {
        REQUIRE(mag == Catch::Approx(0.5));
        ++half_count;
      }
    }
    REQUIRE(half_count == 4);
    // Positions follow the matrix layout (i << n) | j.
    REQUIRE(std::abs(state.amplitudes()((0 << 2) | 0)) == Catch::Approx(0.5));
    REQUIRE(std::abs(state.amplitudes()((1 << 2) | 1)) == Catch::Approx(0.5));
    REQUIRE(std::abs(state.amplitudes()((2 << 2) | 3)) == Catch::Approx(0.5));
    REQUIRE(std::abs(state.amplitudes()((3 << 2) | 2)) == Catch::Approx(0.5));
  }

  SECTION("build with a counter charges one query") {
    QueryCounter counter;
    build_cj(DenseUnitary::identity(2), counter);
    REQUIRE(counter.value() == 1);
  }
}

TEST_CASE("EPR projection probabilities", "[cj]") {
  SECTION("identity keeps every pair on EPR") {
    const CjState state = build_cj(DenseUnitary::identity(2));
    REQUIRE(epr_projection_probability(state, IndexSet{1}) == Catch::Approx(1.0));
    REQUIRE(epr_projection_probability(state, IndexSet{1, 2}) == Catch::Approx(1.0));
  }

  SECTION("X fully disturbs its qubit") {
    const CjState state = build_cj(make_x_tensor_i());
    REQUIRE(epr_projection_probability(state, IndexSet{1}) == Catch::Approx(0.0).margin(1e-15));
  }

  SECTION("CNOT keeps both pairs with probability one quarter") {
    const CjState state = build_cj(make_cnot());
    REQUIRE(epr_projection_probability(state, IndexSet{1, 2}) == Catch::Approx(0.25));
  }

  SECTION("complements influence on random cases") {
    CounterRng rng(314);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(4));
      const DenseUnitary u = gen_haar(n, 2700 + static_cast<std::uint64_t>(trial));
      IndexSet s;
      for (int q = 1; q <= n; ++q)
        if (rng.bernoulli(0.5)) s.insert(q);
      const double p = epr_projection_probability(build_cj(u), s);
      const double inf = influence_exact(decompose(u), s);
      REQUIRE(p + inf == Catch::Approx(1.0).margin(1e-9));
    }
  }
}

TEST_CASE("influence bit sampling", "[cj]") {
  SECTION("identity always returns 0 in both modes") {
    const DenseUnitary id = DenseUnitary::identity(2);
    const InfluenceSampler sv(id, BackendMode::kStatevector, 1);
    const InfluenceSampler an(id, BackendMode::kAnalytic, 1);
    for (std::uint64_t i = 0; i < 200; ++i) {
      REQUIRE(sv.sample_bit(IndexSet{1, 2}, i) == 0);
      REQUIRE(an.sample_bit(IndexSet{1, 2}, i) == 0);
    }
  }

  SECTION("X on qubit 1 always returns 1 for that qubit") {
    const DenseUnitary u = make_x_tensor_i();
    const InfluenceSampler sv(u, BackendMode::kStatevector, 2);
    const InfluenceSampler an(u, BackendMode::kAnalytic, 2);
    for (std::uint64_t i = 0; i < 200; ++i) {
      REQUIRE(sv.sample_bit(IndexSet{1}, i) == 1);
      REQUIRE(an.sample_bit(IndexSet{1}, i) == 1);
    }
  }

  SECTION("CNOT on the target qubit concentrates near one half") {
    const InfluenceSampler sv(make_cnot(), BackendMode::kStatevector, 3);
    const double mean = sample_mean(sv, IndexSet{2}, 100000);
    REQUIRE(mean == Catch::Approx(0.5).margin(0.006));
  }

  SECTION("one query is charged per bit in both modes") {
    const DenseUnitary u = gen_haar(2, 5);
    const InfluenceSampler sv(u, BackendMode::kStatevector, 4);
    const InfluenceSampler an(u, BackendMode::kAnalytic, 4);
    for (std::uint64_t i = 0; i < 10; ++i) {
      sv.sample_bit(IndexSet{1}, i);
      an.sample_bit(IndexSet{2}, i);
    }
    REQUIRE(sv.queries() == 10);
    REQUIRE(an.queries() == 10);
  }

  SECTION("unbiasedness against the reference oracle") {
    CounterRng rng(999);
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(4));
      const DenseUnitary u = gen_haar(n, 3100 + static_cast<std::uint64_t>(trial));
      IndexSet s;
      while (s.empty())
        for (int q = 1; q <= n; ++q)
          if (rng.bernoulli(0.5)) s.insert(q);

      const double p = oracles::oracle_influence(u, s);
      constexpr std::uint64_t kShots = 20000;
      const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(kShots));

      const InfluenceSampler an(u, BackendMode::kAnalytic,
                                7000 + static_cast<std::uint64_t>(trial));
      const double mean = sample_mean(an, s, kShots);
      const auto report = oracles::OracleReport::make("unit-unbiased", p, mean, sigma);
      INFO(report.to_json().dump());
      REQUIRE(report.pass);
    }
  }

  SECTION("statevector and analytic means agree statistically") {
    CounterRng rng(4242);
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(3));
      const DenseUnitary u = gen_haar(n, 8800 + static_cast<std::uint64_t>(trial));
      IndexSet s;
      while (s.empty())
        for (int q = 1; q <= n; ++q)
          if (rng.bernoulli(0.5)) s.insert(q);
      constexpr std::uint64_t kShots = 40000;
      const InfluenceSampler sv(u, BackendMode::kStatevector,
                                11 + static_cast<std::uint64_t>(trial));
      const InfluenceSampler an(u, BackendMode::kAnalytic,
                                900 + static_cast<std::uint64_t>(trial));
      const double m_sv = sample_mean(sv, s, kShots);
      const double m_an = sample_mean(an, s, kShots);
      const double p = oracles::oracle_influence(u, s);
      const double band =
          4.0 * std::sqrt(2.0 * p * (1.0 - p) / static_cast<double>(kShots));
      REQUIRE(std::abs(m_sv - m_an) <= band);
    }
  }

  SECTION("a precomputed spectrum backs the analytic sampler") {
    const DenseUnitary u = gen_haar(2, 66);
    const PauliSpectrum spec = decompose(u);
    const InfluenceSampler from_spec(spec, 5);
    const InfluenceSampler from_unitary(u, BackendMode::kAnalytic, 5);
    for (std::uint64_t i = 0; i < 200; ++i)
      REQUIRE(from_spec.sample_bit(IndexSet{1}, i) ==
              from_unitary.sample_bit(IndexSet{1}, i));
  }

  SECTION("shots are reproducible and order-independent") {
    const DenseUnitary u = gen_haar(3, 6);
    const InfluenceSampler sv(u, BackendMode::kStatevector, 21);
    std::vector<int> serial(500), parallel(500);
    for (std::uint64_t i = 0; i < 500; ++i)
      serial[i] = sv.sample_bit(IndexSet{1, 3}, i);
    parallel_for(500, 4, [&](std::size_t i) {
      parallel[i] = sv.sample_bit(IndexSet{1, 3}, i);
    });
    REQUIRE(serial == parallel);
  }
}
