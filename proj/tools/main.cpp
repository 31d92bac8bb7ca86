// juntalab command-line front end: generate benchmark unitaries, inspect
// spectra and influences, run the subset-influence estimator and the
// tolerant junta tester, and sweep parameter grids. All randomness flows
// from an explicit seed (flag --seed, else env JUNTA_LAB_SEED, else 0), and
// result files embed enough configuration to replay them bit-for-bit.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "juntalab/cj.hpp"
#include "juntalab/estimator.hpp"
#include "juntalab/instances.hpp"
#include "juntalab/io.hpp"
#include "juntalab/metric.hpp"
#include "juntalab/parallel.hpp"
#include "juntalab/partition.hpp"
#include "juntalab/pauli.hpp"
#include "juntalab/tester.hpp"
#include "juntalab/version.hpp"

using namespace juntalab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

constexpr std::uint64_t kInstanceStream = 0xC33;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("JUNTA_LAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("JUNTA_LAB_SEED is not a valid 64-bit seed");
    }
  }
  return 0;
}

std::vector<int> parse_int_list(const std::string& csv, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& csv, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  return out;
}

// Flags shared by the subcommands that need a source unitary.
struct InstanceFlags {
  std::string unitary_path;
  std::string gen_kind;
  int n = 4;
  std::string t_csv;
  double target_distance = 0.2;
  std::optional<std::uint64_t> instance_seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--unitary", unitary_path, "Unitary JSON file to load");
    cmd->add_option("--gen", gen_kind,
                    "Generate the instance: exact_junta | perturbed_junta | haar_random");
    cmd->add_option("--n", n, "Qubit count for --gen");
    cmd->add_option("--T", t_csv, "Junta coordinates for --gen, e.g. 3 or 1,3");
    cmd->add_option("--target-distance", target_distance,
                    "Calibrated distance for --gen perturbed_junta");
    cmd->add_option("--instance-seed", instance_seed,
                    "Seed for --gen (default: derived from --seed)");
  }

  InstanceSpec resolve(std::uint64_t master_seed) const {
    if (unitary_path.empty() == gen_kind.empty())
      throw std::invalid_argument("exactly one of --unitary or --gen is required");
    InstanceSpec spec;
    if (!unitary_path.empty()) {
      spec.kind = InstanceKind::kLabeledFile;
      spec.path = unitary_path;
      return spec;
    }
    spec.kind = instance_kind_from_string(gen_kind);
    spec.n = n;
    spec.t = IndexSet(parse_int_list(t_csv, "--T"));
    spec.target_distance = target_distance;
    spec.seed = instance_seed ? *instance_seed
                              : CounterRng::derive(master_seed, kInstanceStream);
    return spec;
  }
};

// ---------------------------------------------------------------------------
// spectrum

int cmd_spectrum(const std::string& input, const std::string& out_path, double min_mag,
                 unsigned jobs) {
  const DenseUnitary u = load_unitary(input);
  const PauliSpectrum spec = decompose(u, jobs);

  std::ostringstream body;
  json header;
  header["command"] = "spectrum";
  header["tool_version"] = kToolVersion;
  header["input"] = input;
  header["min_mag"] = min_mag;
  header["n"] = u.num_qubits();
  body << "# " << header.dump() << "\n";
  body << "pauli,re,im,mag2\n";
  for (std::uint64_t code = 0; code < spec.size(); ++code) {
    const Complex c = spec.coeff(code);
    if (std::abs(c) < min_mag) continue;
    body << PauliIndex::from_code(u.num_qubits(), code).to_string() << ","
         << fmt17(c.real()) << "," << fmt17(c.imag()) << "," << fmt17(std::norm(c))
         << "\n";
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    open_out(out_path) << body.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// influence

int cmd_influence(const InstanceFlags& source, const std::string& s_csv,
                  std::uint64_t shots, const std::string& backend_name,
                  const std::optional<std::uint64_t>& seed_flag, unsigned jobs) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  InstanceSpec spec = source.resolve(seed);
  const DenseUnitary u = make_instance(spec);
  spec.n = u.num_qubits();
  const IndexSet s(parse_int_list(s_csv, "--S"));

  const double exact = influence_exact(decompose(u, jobs), s);

  json out;
  out["n"] = u.num_qubits();
  out["S"] = s.elements();
  out["influence_exact"] = exact;
  out["seed"] = seed;
  out["instance"] = to_json(spec);

  if (shots > 0) {
    const BackendMode mode = backend_from_string(backend_name);
    const InfluenceSampler sampler(u, mode, seed, jobs);
    std::vector<std::uint8_t> bits(shots);
    parallel_for(shots, jobs, [&](std::size_t i) {
      bits[i] = static_cast<std::uint8_t>(sampler.sample_bit(s, i));
    });
    std::uint64_t ones = 0;
    for (auto b : bits) ones += b;
    const double mean = static_cast<double>(ones) / static_cast<double>(shots);
    out["backend"] = to_string(mode);
    out["shots"] = shots;
    out["estimate"] = mean;
    out["sigma"] = std::sqrt(exact * (1.0 - exact) / static_cast<double>(shots));
    out["queries_used"] = sampler.queries();
  }
  std::cout << out.dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// estimate

int cmd_estimate(const InstanceFlags& source, int k, int l, double rho, double beta,
                 double gamma, double C, const std::string& backend_name,
                 const std::string& partition_csv,
                 const std::optional<std::uint64_t>& seed_flag, const std::string& out_path,
                 bool check_exact, unsigned jobs) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("--rho must be in (0,1)");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("--beta must be in (0,1)");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("--gamma must be in (0,1)");
  if (C < 1.0) throw std::invalid_argument("--C must be >= 1");
  if (k < 1) throw std::invalid_argument("--k must be >= 1");
  if (l < k) throw std::invalid_argument("--l must be >= --k");

  const std::uint64_t seed = resolve_seed(seed_flag);
  InstanceSpec spec = source.resolve(seed);
  const DenseUnitary u = make_instance(spec);
  spec.n = u.num_qubits();

  EstimatorConfig cfg;
  cfg.rho = rho;
  cfg.beta = beta;
  cfg.gamma = gamma;
  cfg.k = k;
  cfg.l = l;
  cfg.C = C;
  cfg.validate();

  const QubitPartition partition =
      partition_csv.empty()
          ? random_partition(u.num_qubits(), l, CounterRng::derive(seed, 0xA11))
          : QubitPartition(u.num_qubits(), l, parse_int_list(partition_csv, "--partition"));

  const InfluenceSampler sampler(u, backend_from_string(backend_name), seed, jobs);
  const SamplePool pool =
      sample_pool(sampler, partition, cfg, CounterRng::derive(seed, 0xB22), jobs);
  const EstimateTable table = build_estimates(pool, k, l);

  json header;
  header["command"] = "estimate";
  header["tool_version"] = kToolVersion;
  header["seed"] = seed;
  header["rho"] = rho;
  header["beta"] = beta;
  header["gamma"] = gamma;
  header["k"] = k;
  header["l"] = l;
  header["C"] = C;
  header["m"] = cfg.sample_count();
  header["backend"] = backend_name;
  header["partition"] = partition.assignment();
  header["instance"] = to_json(spec);

  std::ostringstream body;
  body << "# " << header.dump() << "\n";
  body << "S,v,count\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& e = table.entry(i);
    body << "\"" << table.subset(i).to_string() << "\",";
    if (e.v.has_value()) body << fmt17(*e.v);
    body << "," << e.count << "\n";
  }
  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    open_out(out_path) << body.str();
  }

  if (check_exact) {
    const PauliSpectrum uspec = decompose(u, jobs);
    std::vector<double> exact;
    exact.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
      exact.push_back(rho_subset_influence_exact(uspec, partition, table.subset(i), rho));
    const GuaranteeReport report = estimate_guarantee_check(table, exact, cfg);
    json rj;
    rj["case1_total"] = report.case1_total;
    rj["case1_violations"] = report.case1_violations;
    rj["case2_total"] = report.case2_total;
    rj["case2_violations"] = report.case2_violations;
    rj["unclassified"] = report.unclassified;
    rj["undefined_entries"] = report.undefined_entries;
    rj["violation_fraction"] = report.violation_fraction();
    std::cerr << rj.dump() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// test

struct TesterFlags {
  int k = 1;
  double epsilon = 0.5;
  double rho = 0.5;
  std::optional<int> l_override;
  std::string beta_convention = "proof_eighth";
  double C = 1.0;
  std::string backend = "analytic";

  void attach(CLI::App* cmd) {
    cmd->add_option("--k", k, "Junta arity to test");
    cmd->add_option("--epsilon", epsilon, "Farness parameter in (0,1)");
    cmd->add_option("--rho", rho, "Subset bias in (0,1)");
    cmd->add_option("--l-override", l_override, "Part count override (default 24k^2)");
    cmd->add_option("--beta-convention", beta_convention,
                    "proof_eighth (beta = eps^2/8) or algorithm_sixteenth (eps^2/16)");
    cmd->add_option("--C", C, "Sample-count constant, >= 1");
    cmd->add_option("--backend", backend, "analytic or statevector");
  }

  TesterConfig resolve(std::uint64_t seed) const {
    if (!(rho > 0.0 && rho < 1.0))
      throw std::invalid_argument("--rho must be in (0,1)");
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::invalid_argument("--epsilon must be in (0,1)");
    if (k < 1) throw std::invalid_argument("--k must be >= 1");
    if (C < 1.0) throw std::invalid_argument("--C must be >= 1");
    if (l_override.has_value() && *l_override < k)
      throw std::invalid_argument("--l-override must be >= --k");
    TesterConfig cfg;
    cfg.k = k;
    cfg.epsilon = epsilon;
    cfg.rho = rho;
    cfg.seed = seed;
    cfg.l_override = l_override;
    cfg.beta_convention = beta_convention_from_string(beta_convention);
    cfg.C = C;
    cfg.backend = backend_from_string(backend);
    cfg.validate();
    return cfg;
  }
};

struct TrialBatch {
  std::vector<RunRecord> records;
  std::uint64_t accepts = 0;
};

TrialBatch run_trials(const DenseUnitary& u, const InstanceSpec& spec,
                      const TesterConfig& base_cfg, std::uint64_t seed, int trials,
                      bool timing, unsigned jobs) {
  TrialBatch batch;
  batch.records.resize(static_cast<std::size_t>(trials));
  // Trials get seeds seed, seed+1, ...; they are independent runs, so the
  // worker pool parallelizes across them and the estimator stays serial.
  parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t i) {
    TesterConfig cfg = base_cfg;
    cfg.seed = seed + i;
    const auto start = std::chrono::steady_clock::now();
    const Verdict verdict = run_tolerant_tester(u, cfg, 1);
    const auto stop = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.tool_version = kToolVersion;
    rec.seed = cfg.seed;
    rec.config = cfg;
    rec.instance = spec;
    rec.verdict = verdict;
    rec.wall_time_s =
        timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
    batch.records[i] = std::move(rec);
  });
  for (const auto& rec : batch.records)
    if (rec.verdict.accept) ++batch.accepts;
  return batch;
}

std::string summary_csv(const TrialBatch& batch, int trials) {
  const BinomialCi ci = wilson_interval_95(batch.accepts, static_cast<std::uint64_t>(trials));
  std::uint64_t queries = 0;
  for (const auto& rec : batch.records) queries += rec.verdict.queries_used;
  const double mean_queries =
      trials > 0 ? static_cast<double>(queries) / trials : 0.0;
  std::ostringstream out;
  out << "trials,accepts,accept_rate,ci_low,ci_high,mean_queries\n";
  out << trials << "," << batch.accepts << "," << fmt17(ci.rate) << "," << fmt17(ci.low)
      << "," << fmt17(ci.high) << "," << fmt17(mean_queries) << "\n";
  return out.str();
}

int cmd_test(const InstanceFlags& source, const TesterFlags& tester,
             const std::optional<std::uint64_t>& seed_flag, int trials,
             const std::string& out_prefix, bool timing, unsigned jobs) {
  if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
  const std::uint64_t seed = resolve_seed(seed_flag);
  InstanceSpec spec = source.resolve(seed);
  const TesterConfig base_cfg = tester.resolve(seed);
  const DenseUnitary u = make_instance(spec);
  spec.n = u.num_qubits();

  const TrialBatch batch = run_trials(u, spec, base_cfg, seed, trials, timing, jobs);

  std::ostringstream records;
  for (const auto& rec : batch.records) records << to_json(rec).dump() << "\n";
  const std::string summary = summary_csv(batch, trials);

  if (out_prefix.empty()) {
    std::cout << records.str();
    std::cerr << summary;
  } else {
    open_out(out_prefix + ".jsonl") << records.str();
    open_out(out_prefix + ".csv") << summary;
    std::cerr << "wrote " << out_prefix << ".jsonl and " << out_prefix << ".csv\n";
  }
  return kExitOk;
}

int cmd_replay(const std::string& path, unsigned jobs) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::string line;
  std::size_t index = 0;
  std::size_t mismatches = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const RunRecord rec = run_record_from_json(json::parse(line));
    const DenseUnitary u = make_instance(rec.instance);
    const Verdict again = run_tolerant_tester(u, rec.config, jobs);
    const bool ok = again == rec.verdict;
    std::cout << "record " << index << ": " << (ok ? "reproduced" : "MISMATCH") << "\n";
    if (!ok) ++mismatches;
    ++index;
  }
  if (index == 0) throw std::invalid_argument(path + " holds no records");
  return mismatches == 0 ? kExitOk : kExitInternal;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const std::string& kinds_csv, const std::string& epsilons_csv,
              const std::string& rhos_csv, const InstanceFlags& source_template,
              const TesterFlags& tester, const std::optional<std::uint64_t>& seed_flag,
              int trials, double max_total_queries, const std::string& out_path,
              bool timing, unsigned jobs) {
  if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (!source_template.unitary_path.empty())
    throw std::invalid_argument("sweep draws its instances from --kinds; --unitary is not accepted");
  const std::uint64_t seed = resolve_seed(seed_flag);

  std::vector<std::string> kinds;
  {
    std::stringstream ss(kinds_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) kinds.push_back(item);
  }
  const std::vector<double> epsilons = parse_double_list(epsilons_csv, "--epsilons");
  const std::vector<double> rhos = parse_double_list(rhos_csv, "--rhos");
  if (kinds.empty() || epsilons.empty() || rhos.empty())
    throw std::invalid_argument("sweep grid is empty (need --kinds, --epsilons, --rhos)");

  const std::size_t cells = kinds.size() * epsilons.size() * rhos.size();
  if (cells > 200)
    throw std::invalid_argument("sweep grid has " + std::to_string(cells) +
                                " cells; the limit is 200");

  // Pre-flight the query budget with the closed-form count per cell.
  double total_queries = 0.0;
  for (const auto& kind : kinds) {
    (void)kind;
    for (double eps : epsilons) {
      for (double rho : rhos) {
        TesterFlags cell = tester;
        cell.epsilon = eps;
        cell.rho = rho;
        total_queries +=
            static_cast<double>(query_count(cell.resolve(seed))) * trials;
      }
    }
  }
  if (total_queries > max_total_queries)
    throw std::invalid_argument(
        "sweep refused: estimated " + std::to_string(static_cast<std::uint64_t>(total_queries)) +
        " total queries exceed the budget of " +
        std::to_string(static_cast<std::uint64_t>(max_total_queries)) +
        " (raise --max-total-queries to proceed)");

  std::ostringstream body;
  body << "# " << [&] {
    json header;
    header["command"] = "sweep";
    header["tool_version"] = kToolVersion;
    header["seed"] = seed;
    header["trials"] = trials;
    header["k"] = tester.k;
    header["kinds"] = kinds;
    header["epsilons"] = epsilons;
    header["rhos"] = rhos;
    return header.dump();
  }() << "\n";
  body << "kind,n,epsilon,rho,k,l,trials,accepts,rejects,accept_rate,reject_rate,"
          "queries_per_trial,wall_time_s\n";

  std::size_t cell_index = 0;
  for (const auto& kind : kinds) {
    InstanceFlags source = source_template;
    source.gen_kind = kind;
    source.unitary_path.clear();
    const InstanceSpec spec = source.resolve(seed);
    const DenseUnitary u = make_instance(spec);
    for (double eps : epsilons) {
      for (double rho : rhos) {
        TesterFlags cell = tester;
        cell.epsilon = eps;
        cell.rho = rho;
        const TesterConfig cfg = cell.resolve(seed);
        const std::uint64_t cell_seed =
            seed + static_cast<std::uint64_t>(cell_index) * static_cast<std::uint64_t>(trials);

        const auto start = std::chrono::steady_clock::now();
        const TrialBatch batch = run_trials(u, spec, cfg, cell_seed, trials, false, jobs);
        const auto stop = std::chrono::steady_clock::now();

        const std::uint64_t rejects = trials - batch.accepts;
        const double accept_rate = static_cast<double>(batch.accepts) / trials;
        const double wall =
            timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
        body << kind << "," << spec.n << "," << fmt17(eps) << "," << fmt17(rho) << ","
             << cfg.k << "," << cfg.l() << "," << trials << "," << batch.accepts << ","
             << rejects << "," << fmt17(accept_rate) << "," << fmt17(1.0 - accept_rate)
             << "," << query_count(cfg) << "," << fmt17(wall) << "\n";
        ++cell_index;
      }
    }
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    open_out(out_path) << body.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const std::string& kind, int n, const std::string& t_csv,
            double target_distance, const std::optional<std::uint64_t>& seed_flag,
            const std::string& out_path, std::optional<int> label_k) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  InstanceSpec spec;
  spec.kind = instance_kind_from_string(kind);
  if (spec.kind == InstanceKind::kLabeledFile)
    throw std::invalid_argument("--kind labeled_file is only a loader; pick a generator");
  spec.n = n;
  spec.t = IndexSet(parse_int_list(t_csv, "--T"));
  spec.target_distance = target_distance;
  spec.seed = seed;

  const DenseUnitary u = make_instance(spec);

  json meta;
  meta["tool_version"] = kToolVersion;
  meta["kind"] = kind;
  meta["T"] = spec.t.elements();
  meta["target_distance"] = target_distance;
  meta["seed"] = seed;

  json label;
  if (label_k) {
    const auto [d, witness] = dist_to_k_juntas(u, *label_k);
    label["k"] = *label_k;
    label["dist_to_k_juntas"] = d;
    label["witness_T"] = witness.t.elements();
    meta["label"] = label;
  }

  write_unitary(out_path, u, meta);
  json note;
  note["wrote"] = out_path;
  note["n"] = n;
  if (label_k) note["label"] = label;
  std::cout << note.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tolerant quantum junta testing laboratory"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_flag;
  unsigned jobs = default_jobs();
  app.add_option("--seed", seed_flag, "Master seed (fallback: env JUNTA_LAB_SEED, then 0)");
  app.add_option("--jobs", jobs, "Worker threads (default: logical cores)");
  app.fallthrough();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Pauli spectrum of a unitary as CSV");
  std::string spectrum_in, spectrum_out;
  double min_mag = 1e-12;
  spectrum->add_option("--unitary", spectrum_in, "Unitary JSON file")->required();
  spectrum->add_option("--min-mag", min_mag, "Drop coefficients below this magnitude");
  spectrum->add_option("--out", spectrum_out, "Output CSV path (default stdout)");

  // influence
  auto* influence = app.add_subcommand("influence", "Exact (and sampled) influence of a qubit set");
  InstanceFlags influence_source;
  influence_source.attach(influence);
  std::string influence_s;
  std::uint64_t influence_shots = 0;
  std::string influence_backend = "analytic";
  influence->add_option("--S", influence_s, "Qubit set, e.g. 1,3")->required();
  influence->add_option("--shots", influence_shots, "Also sample this many bits");
  influence->add_option("--backend", influence_backend, "analytic or statevector");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Subset-influence estimates for all candidate sets");
  InstanceFlags estimate_source;
  estimate_source.attach(estimate);
  int est_k = 1, est_l = 24;
  double est_rho = 0.5, est_beta = 0.03125, est_gamma = 0.125, est_C = 1.0;
  std::string est_backend = "analytic", est_partition, est_out;
  bool est_check_exact = false;
  estimate->add_option("--k", est_k, "Excluded part count");
  estimate->add_option("--l", est_l, "Part count");
  estimate->add_option("--rho", est_rho, "Subset bias in (0,1)");
  estimate->add_option("--beta", est_beta, "Closeness scale in (0,1)");
  estimate->add_option("--gamma", est_gamma, "Relative accuracy in (0,1)");
  estimate->add_option("--C", est_C, "Sample-count constant, >= 1");
  estimate->add_option("--backend", est_backend, "analytic or statevector");
  estimate->add_option("--partition", est_partition,
                       "Explicit part labels per qubit, e.g. 1,2,1 (default: random)");
  estimate->add_option("--out", est_out, "Output CSV path (default stdout)");
  estimate->add_flag("--check-exact", est_check_exact,
                     "Also compare against the exact enumeration (small l only)");

  // test
  auto* test = app.add_subcommand("test", "Run the tolerant junta tester over seeded trials");
  InstanceFlags test_source;
  test_source.attach(test);
  TesterFlags test_flags;
  test_flags.attach(test);
  int test_trials = 1;
  std::string test_out, test_replay;
  bool test_timing = false;
  test->add_option("--trials", test_trials, "Independent trials with seeds seed, seed+1, ...");
  test->add_option("--out", test_out, "Output prefix for .jsonl records and .csv summary");
  test->add_option("--replay", test_replay, "Re-execute records from a .jsonl file and verify");
  test->add_flag("--timing", test_timing,
                 "Record wall times (off by default so outputs are byte-reproducible)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Accept/reject rates over an epsilon x rho x kind grid");
  InstanceFlags sweep_source;
  sweep_source.attach(sweep);
  TesterFlags sweep_flags;
  sweep_flags.attach(sweep);
  std::string sweep_kinds = "exact_junta,haar_random";
  std::string sweep_epsilons, sweep_rhos, sweep_out;
  int sweep_trials = 10;
  double sweep_budget = 5e8;
  bool sweep_timing = false;
  sweep->add_option("--kinds", sweep_kinds, "Instance kinds, comma-separated");
  sweep->add_option("--epsilons", sweep_epsilons, "Comma-separated epsilon grid")->required();
  sweep->add_option("--rhos", sweep_rhos, "Comma-separated rho grid")->required();
  sweep->add_option("--trials", sweep_trials, "Trials per cell");
  sweep->add_option("--max-total-queries", sweep_budget,
                    "Refuse the sweep above this total query estimate");
  sweep->add_option("--out", sweep_out, "Output CSV path (default stdout)");
  sweep->add_flag("--timing", sweep_timing, "Record wall times per cell");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a benchmark unitary as JSON");
  std::string gen_kind = "haar_random", gen_t, gen_out;
  int gen_n = 4;
  double gen_target = 0.2;
  std::optional<int> gen_label_k;
  gen->add_option("--kind", gen_kind, "exact_junta | perturbed_junta | haar_random");
  gen->add_option("--n", gen_n, "Qubit count");
  gen->add_option("--T", gen_t, "Junta coordinates, e.g. 1,3");
  gen->add_option("--target-distance", gen_target, "Target for perturbed_junta");
  gen->add_option("--out", gen_out, "Output JSON path")->required();
  gen->add_option("--label-k", gen_label_k,
                  "Also record the exhaustive distance to k-juntas in the file meta");

  try {
    app.parse(argc, argv);

    if (spectrum->parsed())
      return cmd_spectrum(spectrum_in, spectrum_out, min_mag, jobs);
    if (influence->parsed())
      return cmd_influence(influence_source, influence_s, influence_shots,
                           influence_backend, seed_flag, jobs);
    if (estimate->parsed())
      return cmd_estimate(estimate_source, est_k, est_l, est_rho, est_beta, est_gamma,
                          est_C, est_backend, est_partition, seed_flag, est_out,
                          est_check_exact, jobs);
    if (test->parsed()) {
      if (!test_replay.empty()) return cmd_replay(test_replay, jobs);
      return cmd_test(test_source, test_flags, seed_flag, test_trials, test_out,
                      test_timing, jobs);
    }
    if (sweep->parsed())
      return cmd_sweep(sweep_kinds, sweep_epsilons, sweep_rhos, sweep_source, sweep_flags,
                       seed_flag, sweep_trials, sweep_budget, sweep_out, sweep_timing,
                       jobs);
    if (gen->parsed())
      return cmd_gen(gen_kind, gen_n, gen_t, gen_target, seed_flag, gen_out, gen_label_k);

    std::cerr << app.help();
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FileFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
