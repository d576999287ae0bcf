// slocc: classify two- and three-qutrit pure states under invertible local operations.
//
//   slocc classify FILE... [--tol X] [--budget N] [--json|--text] [--timing]
//   slocc gen --canonical ID | --orbit ID [--seed N] [--cond B] [--params P] [-o FILE] [--verify]
//   slocc verify FILE1 FILE2 [--tol X] [--budget N] [--json]
//   slocc count N [--json]
//
// Exit codes: 0 success, 1 --verify mismatch, 2 malformed input or bad
// arguments, 3 unclassified signature. SLOCC_TOL overrides the default rank cutoff.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slocc/bipartite.hpp"
#include "slocc/classifier.hpp"
#include "slocc/harness.hpp"
#include "slocc/states.hpp"

namespace {

using nlohmann::json;
using namespace slocc;

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitUnclassified = 3;

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateFormatError("cannot open state file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Common {
  double tol = 0.0;  // 0: use default / environment
  int budget = 8;
  bool json_out = false;
  bool text_out = false;
  bool timing = false;

  SignatureOptions options() const {
    SignatureOptions o;
    if (const char* env = std::getenv("SLOCC_TOL")) {
      try {
        o.tol.rank_rel = std::stod(env);
      } catch (const std::exception&) {
        throw InvalidArgument(std::string("SLOCC_TOL is not a number: ") + env);
      }
    }
    if (tol > 0.0) o.tol.rank_rel = tol;
    o.tol.validate();
    o.budget = budget;
    if (o.budget < 5) throw InvalidArgument("--budget must be at least 5");
    return o;
  }
};

json tolerance_json(const SignatureOptions& o) {
  return {{"rank_rel", o.tol.rank_rel},       {"root_cluster", o.tol.root_cluster},
          {"covariant_rel", o.tol.covariant_rel}, {"tol_unitary", o.tol.tol_unitary},
          {"tol_recon", o.tol.tol_recon},     {"budget", o.budget}};
}

json report_header(const SignatureOptions& o) {
  return {{"schema_version", kSchemaVersion}, {"tool", "slocc"}, {"version", SLOCC_VERSION},
          {"tolerances", tolerance_json(o)}};
}

struct FileOutcome {
  int code = kExitOk;
  std::string text;
  json report;
};

FileOutcome classify_file(const std::string& path, const SignatureOptions& opts, bool timing) {
  FileOutcome out;
  const auto start = std::chrono::steady_clock::now();
  json rep = report_header(opts);
  rep["input"] = {{"path", path}};
  try {
    const std::string bytes = slurp(path);
    rep["input"]["digest"] = fnv1a64(bytes);
    const PureState s = read_state(bytes);
    if (s.parties() == 2) {
      const BipartiteClass c = classify_bipartite(s, opts.tol);
      rep["result"] = {{"kind", "bipartite"}, {"schmidt_rank", c.schmidt_rank}, {"canonical", c.label()}};
      out.text = "bipartite rank " + std::to_string(c.schmidt_rank) + " (" + c.label() + ")";
    } else {
      const SloccVerdict v = classify_tripartite(s, opts);
      rep["result"] = v.to_json();
      rep["result"]["kind"] = "tripartite";
      if (v.classified()) {
        out.text = "family=" + family_name(*v.family);
        if (v.variant && variant_count(*v.family) > 1) out.text += " variant=" + std::to_string(*v.variant);
      } else {
        out.text = "unclassified [" + v.signature.key() + "]";
        out.code = kExitUnclassified;
      }
      out.text += ", " + v.separability.to_string();
      if (!v.certified) out.text += " (budget-limited)";
    }
  } catch (const std::invalid_argument& e) {
    rep["error"] = e.what();
    out.text = std::string("error: ") + e.what();
    out.code = kExitBadInput;
  } catch (const NumericalError& e) {
    rep["error"] = e.what();
    out.text = std::string("error: ") + e.what();
    out.code = kExitBadInput;
  }
  if (timing) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep["elapsed_ms"] = ms;
    out.text += " [" + std::to_string(ms) + " ms]";
  }
  out.report = std::move(rep);
  return out;
}

int cmd_classify(const std::vector<std::string>& files, const Common& c) {
  const SignatureOptions opts = c.options();
  std::vector<FileOutcome> outcomes;
  for (const auto& f : files) outcomes.push_back(classify_file(f, opts, c.timing));
  int code = kExitOk;
  for (const auto& o : outcomes) {
    if (o.code == kExitBadInput) code = kExitBadInput;
    else if (o.code == kExitUnclassified && code == kExitOk) code = kExitUnclassified;
  }
  if (c.json_out) {
    if (outcomes.size() == 1) {
      std::cout << outcomes[0].report.dump(2) << "\n";
    } else {
      json all = json::array();
      for (const auto& o : outcomes) all.push_back(o.report);
      std::cout << all.dump(2) << "\n";
    }
  } else {
    for (const auto& o : outcomes) {
      if (outcomes.size() > 1) std::cout << o.report["input"]["path"].get<std::string>() << ": ";
      (o.code == kExitBadInput ? std::cerr : std::cout) << o.text << "\n";
    }
  }
  return code;
}

P0P0P1Parameters parse_params(const std::string& text) {
  if (text == "default") return P0P0P1Parameters::defaults();
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw InvalidArgument("");
    } catch (const std::exception&) {
      throw InvalidArgument("--params: '" + item + "' is not a number");
    }
  }
  if (v.size() != 12) throw InvalidArgument("--params: need 12 numbers (phi, varphi, chi, psi) or 'default'");
  auto vec = [&](int k) {
    CVector x(3);
    x << v[3 * k], v[3 * k + 1], v[3 * k + 2];
    return x;
  };
  return {vec(0), vec(1), vec(2), vec(3)};
}

struct GenArgs {
  std::string canonical, orbit, params, out;
  std::uint64_t seed = 0;
  double cond = 50.0;
  bool verify = false;
};

int cmd_gen(const GenArgs& g, const Common& c) {
  if (g.canonical.empty() == g.orbit.empty())
    throw InvalidArgument("gen: give exactly one of --canonical or --orbit");
  CanonicalId id = CanonicalId::parse(g.canonical.empty() ? g.orbit : g.canonical);
  if (!g.params.empty()) id.params = parse_params(g.params);
  PureState s = canonical_state(id);
  if (!g.orbit.empty()) s = apply_ilo_tripartite(s, random_ilo(g.seed, g.cond)).normalized();

  const std::string body = write_state(s);
  if (g.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(g.out);
    if (!f) throw InvalidArgument("cannot write " + g.out);
    f << body;
  }
  if (g.verify) {
    const SloccVerdict v = classify_tripartite(read_state(body), c.options());
    if (!v.family || *v.family != id.family) {
      std::cerr << "verify: generated state classifies as " << v.label() << ", expected "
                << family_name(id.family) << "\n";
      return kExitMismatch;
    }
    std::cerr << "verify: " << v.label() << " ok\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& a, const std::string& b, const Common& c) {
  const SignatureOptions opts = c.options();
  const std::string ba = slurp(a), bb = slurp(b);
  const Equivalence e = verify_equivalence(read_state(ba), read_state(bb), opts);
  if (c.json_out) {
    json rep = report_header(opts);
    rep["inputs"] = json::array({{{"path", a}, {"digest", fnv1a64(ba)}}, {{"path", b}, {"digest", fnv1a64(bb)}}});
    rep["result"] = to_string(e);
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << to_string(e) << "\n";
  }
  return kExitOk;
}

int cmd_count(int n, const Common& c) {
  const ClassCount cc = count_classes(n);
  if (c.json_out) {
    json rep = {{"schema_version", kSchemaVersion}, {"tool", "slocc"}, {"version", SLOCC_VERSION},
                {"n", cc.n}, {"total", cc.total}};
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << cc.total << "\n";
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool with_text) {
  sub->add_option("--tol", c.tol, "relative rank cutoff (default 1e-9 or $SLOCC_TOL)");
  sub->add_option("--budget", c.budget, "highest Macaulay degree tried (>= 5)");
  auto* j = sub->add_flag("--json", c.json_out, "emit a JSON report");
  if (with_text) {
    auto* t = sub->add_flag("--text", c.text_out, "emit a one-line text report (default)");
    j->excludes(t);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLOCC classification of two- and three-qutrit pure states"};
  app.require_subcommand(1);
  Common common;

  std::vector<std::string> files;
  auto* classify = app.add_subcommand("classify", "classify state files");
  classify->add_option("files", files, "state files")->required();
  add_common(classify, common, true);
  classify->add_flag("--timing", common.timing, "include elapsed time (breaks byte-stable output)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a canonical or orbit state file");
  auto* can = g->add_option("--canonical", gen.canonical, "FAMILY[:VARIANT]");
  auto* orb = g->add_option("--orbit", gen.orbit, "FAMILY[:VARIANT] moved by a random ILO triple");
  can->excludes(orb);
  g->add_option("--seed", gen.seed, "seed for --orbit");
  g->add_option("--cond", gen.cond, "condition-number bound for --orbit factors");
  g->add_option("--params", gen.params, "P0P0P1 vectors: 'default' or 12 comma-separated reals");
  g->add_option("-o,--out", gen.out, "output path (default stdout)");
  g->add_flag("--verify", gen.verify, "re-classify the output and check the family");
  g->add_option("--tol", common.tol, "relative rank cutoff for --verify");
  g->add_option("--budget", common.budget, "Macaulay degree budget for --verify");

  std::vector<std::string> pair;
  auto* verify = app.add_subcommand("verify", "compare the classes of two state files");
  verify->add_option("files", pair, "two state files")->required()->expected(2);
  add_common(verify, common, false);

  int n = 0;
  auto* count = app.add_subcommand("count", "number of classes for local dimension n");
  count->add_option("n", n, "local dimension (2..20)")->required();
  count->add_flag("--json", common.json_out, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*classify) return cmd_classify(files, common);
    if (*g) return cmd_gen(gen, common);
    if (*verify) return cmd_verify(pair[0], pair[1], common);
    if (*count) return cmd_count(n, common);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
