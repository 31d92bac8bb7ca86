#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "juntalab/instances.hpp"
#include "juntalab/io.hpp"
#include "juntalab/tester.hpp"
#include "juntalab/version.hpp"

using namespace juntalab;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
  return fs::temp_directory_path() / (std::string("juntalab_io_") + name);
}

}  // namespace

TEST_CASE("unitary files round-trip bit for bit", "[io]") {
  const auto path = temp_file("roundtrip.json");
  const DenseUnitary u = gen_haar(3, 317);
  write_unitary(path.string(), u);
  const DenseUnitary back = load_unitary(path.string());
  REQUIRE(back.num_qubits() == 3);
  REQUIRE(back.entries() == u.entries());
  fs::remove(path);
}

TEST_CASE("unitary file meta is preserved and ignored on load", "[io]") {
  const auto path = temp_file("meta.json");
  nlohmann::json meta;
  meta["kind"] = "exact_junta";
  meta["seed"] = 12;
  write_unitary(path.string(), gen_exact_junta(2, IndexSet{1}, 12), meta);

  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  REQUIRE(j.at("meta").at("kind") == "exact_junta");
  REQUIRE(load_unitary(path.string()).num_qubits() == 2);
  fs::remove(path);
}

TEST_CASE("unitary file validation errors", "[io]") {
  SECTION("missing file") {
    REQUIRE_THROWS_AS(load_unitary("/nonexistent/u.json"), FileFormatError);
  }

  SECTION("malformed JSON reports the position") {
    const auto path = temp_file("broken.json");
    std::ofstream(path) << "{\"n\": 1, \"entries\": [[1,0],";
    try {
      load_unitary(path.string());
      FAIL("expected FileFormatError");
    } catch (const FileFormatError& e) {
      REQUIRE(std::string(e.what()).find("parse error") != std::string::npos);
    }
    fs::remove(path);
  }

  SECTION("wrong entry count") {
    const auto path = temp_file("short.json");
    std::ofstream(path) << R"({"n": 1, "entries": [[1,0],[0,0],[0,0]]})";
    REQUIRE_THROWS_AS(load_unitary(path.string()), FileFormatError);
    fs::remove(path);
  }

  SECTION("non-unitary matrix") {
    const auto path = temp_file("nonunitary.json");
    std::ofstream(path)
        << R"({"n": 1, "entries": [[0.5,0],[0.5,0],[0.5,0],[0.5,0]]})";
    try {
      load_unitary(path.string());
      FAIL("expected FileFormatError");
    } catch (const FileFormatError& e) {
      REQUIRE(std::string(e.what()).find("not unitary") != std::string::npos);
    }
    fs::remove(path);
  }
}

TEST_CASE("run records round-trip through JSON", "[io]") {
  TesterConfig cfg;
  cfg.k = 1;
  cfg.epsilon = 0.5;
  cfg.rho = 0.5;
  cfg.seed = 11;
  cfg.l_override = 8;
  cfg.backend = BackendMode::kAnalytic;

  InstanceSpec spec;
  spec.kind = InstanceKind::kExactJunta;
  spec.n = 4;
  spec.t = IndexSet{2};
  spec.seed = 5;

  RunRecord rec;
  rec.tool_version = kToolVersion;
  rec.seed = cfg.seed;
  rec.config = cfg;
  rec.instance = spec;
  rec.verdict = run_tolerant_tester(make_instance(spec), cfg);
  rec.wall_time_s = 0.0;

  const RunRecord back = run_record_from_json(to_json(rec));
  REQUIRE(back.tool_version == rec.tool_version);
  REQUIRE(back.seed == rec.seed);
  REQUIRE(back.config.seed == cfg.seed);
  REQUIRE(back.config.l() == cfg.l());
  REQUIRE(back.config.beta() == cfg.beta());
  REQUIRE(back.instance.kind == spec.kind);
  REQUIRE(back.instance.t == spec.t);
  REQUIRE(back.verdict == rec.verdict);

  // Re-executing the reloaded record reproduces the verdict.
  const Verdict again = run_tolerant_tester(make_instance(back.instance), back.config);
  REQUIRE(again == rec.verdict);
}

TEST_CASE("binomial interval endpoints", "[io]") {
  const BinomialCi none = wilson_interval_95(0, 30);
  REQUIRE(none.rate == 0.0);
  REQUIRE(none.low == 0.0);
  REQUIRE(none.high > 0.0);

  const BinomialCi all = wilson_interval_95(30, 30);
  REQUIRE(all.rate == 1.0);
  REQUIRE(all.high == 1.0);
  REQUIRE(all.low < 1.0);

  const BinomialCi mid = wilson_interval_95(20, 30);
  REQUIRE(mid.low < 20.0 / 30.0);
  REQUIRE(mid.high > 20.0 / 30.0);
  REQUIRE(mid.low > 0.4);
  REQUIRE(mid.high < 0.9);
}
