#include "juntalab/cj.hpp"

#include <cmath>
#include <stdexcept>

namespace juntalab {

namespace {

/// In-place EPR projection of pair (l, l+n) on a 4^n amplitude vector.
/// For each setting of the other qubits the pair block (a00,a01,a10,a11)
/// maps to ((a00+a11)/2, 0, 0, (a00+a11)/2).
void project_pair(Vector& amps, int n, int l) {
  const std::uint64_t row_bit = std::uint64_t{1} << (2 * n - l);  // qubit l of |i>
  const std::uint64_t col_bit = std::uint64_t{1} << (n - l);      // qubit l+n of |j>
  const std::uint64_t size = static_cast<std::uint64_t>(amps.size());
  for (std::uint64_t base = 0; base < size; ++base) {
    if ((base & row_bit) != 0 || (base & col_bit) != 0) continue;
    const auto i00 = static_cast<Eigen::Index>(base);
    const auto i01 = static_cast<Eigen::Index>(base | col_bit);
    const auto i10 = static_cast<Eigen::Index>(base | row_bit);
    const auto i11 = static_cast<Eigen::Index>(base | row_bit | col_bit);
    const Complex mean = (amps(i00) + amps(i11)) * 0.5;
    amps(i00) = mean;
    amps(i11) = mean;
    amps(i01) = Complex{0.0, 0.0};
    amps(i10) = Complex{0.0, 0.0};
  }
}

void check_pairs(int n, const IndexSet& s, const char* where) {
  if (s.max_element() > n)
    throw std::invalid_argument(std::string(where) + ": qubit index exceeds n");
}

}  // namespace

CjState CjState::from_unitary(const DenseUnitary& u) {
  const int n = u.num_qubits();
  const Eigen::Index dim = u.entries().rows();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Vector amps(dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      amps(i * dim + j) = u.entries()(i, j) * scale;
  return CjState(n, std::move(amps));
}

CjState build_cj(const DenseUnitary& u) { return CjState::from_unitary(u); }

CjState build_cj(const DenseUnitary& u, QueryCounter& counter) {
  counter.add(1);
  return CjState::from_unitary(u);
}

double epr_projection_probability(const CjState& state, const IndexSet& s) {
  check_pairs(state.num_qubits(), s, "epr_projection_probability");
  Vector amps = state.amplitudes();
  for (int l : s.elements()) project_pair(amps, state.num_qubits(), l);
  const double p = amps.squaredNorm();
  return std::min(1.0, std::max(0.0, p));
}

const char* to_string(BackendMode mode) {
  return mode == BackendMode::kStatevector ? "statevector" : "analytic";
}

BackendMode backend_from_string(const std::string& name) {
  if (name == "statevector") return BackendMode::kStatevector;
  if (name == "analytic") return BackendMode::kAnalytic;
  throw std::invalid_argument("unknown backend: " + name);
}

InfluenceSampler::InfluenceSampler(const DenseUnitary& u, BackendMode mode,
                                   std::uint64_t seed, unsigned jobs)
    : n_(u.num_qubits()), mode_(mode), seed_(seed) {
  if (mode_ == BackendMode::kAnalytic)
    influence_.emplace(decompose(u, jobs));
  else
    cj_.emplace(CjState::from_unitary(u));
}

InfluenceSampler::InfluenceSampler(const PauliSpectrum& spectrum, std::uint64_t seed)
    : n_(spectrum.num_qubits()), mode_(BackendMode::kAnalytic), seed_(seed) {
  influence_.emplace(spectrum);
}

int InfluenceSampler::sample_bit(const IndexSet& s, CounterRng& rng) const {
  check_pairs(n_, s, "InfluenceSampler::sample_bit");
  counter_.add(1);

  if (mode_ == BackendMode::kAnalytic)
    return rng.bernoulli(influence_->influence(s)) ? 1 : 0;

  // One prepared CJ state per query; measure the queried pairs one at a
  // time. A non-EPR outcome on any pair yields 1 immediately.
  Vector amps = cj_->amplitudes();
  double norm = amps.squaredNorm();
  for (int l : s.elements()) {
    Vector projected = amps;
    project_pair(projected, n_, l);
    const double kept = projected.squaredNorm();
    const double p_epr = (norm > 0.0) ? std::min(1.0, kept / norm) : 0.0;
    if (!rng.bernoulli(p_epr)) return 1;
    amps = std::move(projected);
    norm = kept;
  }
  return 0;
}

int InfluenceSampler::sample_bit(const IndexSet& s, std::uint64_t shot) const {
  CounterRng rng(CounterRng::derive(seed_, shot));
  return sample_bit(s, rng);
}

double InfluenceSampler::exact_influence(const IndexSet& s) const {
  if (!influence_)
    throw std::logic_error("exact_influence requires the analytic backend");
  return influence_->influence(s);
}

}  // namespace juntalab
