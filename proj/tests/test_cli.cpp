#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "slocc/classifier.hpp"
#include "slocc/harness.hpp"
#include "slocc/states.hpp"

using namespace slocc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded and returns the exit code and stdout.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + SLOCC_CLI + "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::current_path() / "cli_scratch";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string fixture(const std::string& name) { return std::string(SLOCC_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("classify text reports") {
  const std::string ghz = write_file("ghz2.json", write_state(PureState::from_kets(3, {"000", "111"})));
  Run r = run("classify " + ghz);
  CHECK(r.code == 0);
  CHECK(r.out == "family=P0P0 variant=3, genuinely-tripartite\n");

  r = run("classify --text " + write_file("bell.json", write_state(PureState::from_kets(2, {"00", "11"}))));
  CHECK(r.code == 0);
  CHECK(r.out == "bipartite rank 2 (Ψ₁)\n");

  r = run("classify " + write_file("sep.json", write_state(PureState::from_kets(3, {"000", "101"}))));
  CHECK(r.out == "family=P0P0 variant=1, biseparable(party-2)\n");
}

TEST_CASE("malformed input exits with 2") {
  CHECK(run("classify " + write_file("empty.json", "")).code == 2);
  CHECK(run("classify " + write_file("junk.json", "{not json")).code == 2);
  CHECK(run("classify " + write_file("zero.json", R"({"parties": 2, "amplitudes": []})")).code == 2);
  CHECK(run("classify " + (scratch() / "missing.json").string()).code == 2);
  CHECK(run("classify").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("gen --canonical bogus").code == 2);
  CHECK(run("gen --canonical P0P0P1").code == 2);
  CHECK(run("gen --canonical P0P0 --params default").code == 2);
  CHECK(run("count 1").code == 2);
  CHECK(run("count abc").code == 2);
  const std::string ghz = write_file("ghz3.json", write_state(PureState::from_kets(3, {"000", "111", "222"})));
  CHECK(run("classify --json --text " + ghz).code == 2);
  CHECK(run("classify --budget 3 " + ghz).code == 2);
  CHECK(run("classify --tol 2 " + ghz).code == 2);
}

TEST_CASE("unclassified signatures exit with 3 and still report") {
  // A generic state: its 3-dimensional span has a smooth determinant cubic,
  // which no catalog row produces.
  CVector a(27);
  for (int i = 0; i < 27; ++i) a(i) = Complex(std::cos(1.0 + 3.7 * i), std::sin(0.3 * i * i));
  const std::string path = write_file("generic.json", write_state(PureState(3, a)));
  Run r = run("classify " + path);
  CHECK(r.code == 3);
  CHECK(r.out.rfind("unclassified", 0) == 0);
  r = run("classify --json " + path);
  CHECK(r.code == 3);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["family"].is_null());
  CHECK(j["result"]["signature"].is_object());
}

TEST_CASE("JSON reports are stable") {
  const std::string ghz = write_file("ghz4.json", write_state(PureState::from_kets(3, {"000", "111", "222"})));
  const Run a = run("classify --json " + ghz), b = run("classify --json " + ghz);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["tool"] == "slocc");
  CHECK(j["version"].is_string());
  CHECK(j["input"]["digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  CHECK(j["tolerances"]["rank_rel"] == 1e-9);
  CHECK(j["tolerances"]["budget"] == 8);
  CHECK(j["result"]["family"] == "P0P0P0");
  CHECK(j["result"]["variant"] == 6);
  CHECK(j["result"]["rank_triple"] == nlohmann::json::array({3, 3, 3}));
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK(nlohmann::json::parse(run("classify --json --timing " + ghz).out).contains("elapsed_ms"));
}

TEST_CASE("tolerance flags and the environment override") {
  const std::string ghz = write_file("ghz5.json", write_state(PureState::from_kets(3, {"000", "111"})));
  auto tol_of = [](const Run& r) { return nlohmann::json::parse(r.out)["tolerances"]["rank_rel"].get<double>(); };
  CHECK(tol_of(run("classify --json " + ghz, "SLOCC_TOL=1e-7")) == 1e-7);
  CHECK(tol_of(run("classify --json --tol 1e-6 " + ghz, "SLOCC_TOL=1e-7")) == 1e-6);
  CHECK(run("classify " + ghz, "SLOCC_TOL=abc").code == 2);
}

TEST_CASE("gen writes canonical and orbit states") {
  Run r = run("gen --canonical P1P2:1");
  REQUIRE(r.code == 0);
  CHECK(same_ray(read_state(r.out), PureState::from_kets(3, {"000", "011", "022", "101", "112"}), 1e-14));
  CHECK(read_state(r.out).norm() == doctest::Approx(1.0));

  const std::string out = (scratch() / "orbit.json").string();
  r = run("gen --orbit dim1-P2 --seed 7 --verify -o " + out);
  CHECK(r.code == 0);
  const PureState s = read_state_file(out);
  CHECK(s.amplitudes().size() == 27);
  int nonzero = 0;
  for (int i = 0; i < 27; ++i) nonzero += std::abs(s.amplitudes()(i)) > 0.0;
  CHECK(nonzero == 27);
  CHECK(run("classify " + out).out == "family=dim1-P2, biseparable(party-1)\n");

  CHECK(run("gen --orbit dim1-P2 --seed 7").out == run("gen --orbit dim1-P2 --seed 7").out);
  CHECK(run("gen --canonical P0P0P1 --params default --verify").code == 0);
  CHECK(run("gen --canonical P0P0P1 --params 1,0,0,0,1,0,0,0,1,1,1,0").code == 0);
  CHECK(run("gen --canonical P0P0P1 --params 1,2").code == 2);
}

TEST_CASE("gen and classify round trip over the catalog") {
  int row = 0;
  for (const auto& e : tripartite_catalog()) {
    const std::string id = e.id.to_string();
    const std::string extra = e.id.family == Family::P0P0P1 ? " --params default" : "";
    std::string paths;
    for (int seed = 0; seed <= 20; ++seed) {
      const std::string path = (scratch() / ("rt_" + std::to_string(row) + "_" + std::to_string(seed) + ".json")).string();
      const std::string gen =
          seed == 0 ? "gen --canonical " + id : "gen --orbit " + id + " --seed " + std::to_string(seed);
      REQUIRE(run(gen + extra + " -o " + path).code == 0);
      paths += " " + path;
    }
    const Run r = run("classify --json" + paths);
    CHECK_MESSAGE(r.code == 0, id);
    const auto reports = nlohmann::json::parse(r.out);
    REQUIRE(reports.size() == 21);
    for (const auto& rep : reports)
      CHECK_MESSAGE(rep["result"]["family"] == family_name(e.id.family), (id + " " + rep["input"]["path"].get<std::string>()));
    ++row;
  }
}

TEST_CASE("verify and count") {
  CHECK(run("verify " + fixture("spin_II.json") + " " + fixture("spin_III.json")).out == "SameClass\n");
  const std::string a = write_file("a.json", write_state(PureState::from_kets(3, {"000", "011"})));
  const std::string b = write_file("b.json", write_state(PureState::from_kets(3, {"000", "111"})));
  Run r = run("verify " + a + " " + b);
  CHECK(r.code == 0);
  CHECK(r.out == "DifferentClass\n");
  r = run("verify --json " + a + " " + a);
  CHECK(nlohmann::json::parse(r.out)["result"] == "SameClass");
  CHECK(run("verify " + a + " " + fixture("spin_II.json")).code == 2);
  CHECK(run("verify " + a).code == 2);

  CHECK(run("count 3").out == "12\n");
  CHECK(run("count 2").out == "2\n");
  CHECK(run("count 4").out == "49\n");
  CHECK(nlohmann::json::parse(run("count 3 --json").out)["total"] == 12);
}
