#include "ucvrp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "ucvrp/algorithms.hpp"
#include "ucvrp/constants.hpp"
#include "ucvrp/errors.hpp"
#include "ucvrp/io.hpp"
#include "ucvrp/oracle.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp::cli {

namespace {

struct GenArgs {
  std::string kind = "euclidean";
  int n = 5;
  int k = 3;
  std::string law = "uniform";
  std::uint64_t seed = 0;
  std::string name;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string alg = "alg1";
  std::string delta;
  std::optional<double> gamma;
  std::optional<double> gamma1;
  std::optional<double> gamma2;
  std::uint64_t seed = 0;
  bool trace = false;
  bool dump_lp = false;
  std::string tour = "auto";
  bool round = false;
};

struct ConstantsArgs {
  double eps_fixed = 0.000335;
  double eps_general = 0.000334;
  std::vector<double> eps;
  std::string format = "json";
};

struct BenchArgs {
  std::string suite = "small";
  int seeds = 3;
  std::string format = "json";
  bool timing = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto kind = a.kind == "euclidean" ? MetricKind::euclidean
                                          : MetricKind::random_metric;
  const auto law = a.law == "uniform" ? DemandLaw::uniform : DemandLaw::heavy_tail;
  auto inst = gen_instance(kind, a.n, a.k, law, a.seed);
  auto doc = io::instance_to_json(inst);
  if (!a.name.empty()) {
    doc["name"] = a.name;
  }
  if (a.out.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    io::save_instance(io::instance_from_json(doc), a.out);
    out << nlohmann::json{{"written", a.out}}.dump() << "\n";
  }
  return kOk;
}

Tour pick_tour(const Instance& inst, const std::string& mode) {
  const auto all = inst.customers();
  if (mode == "exact") {
    return exact_tsp(inst, all);
  }
  if (mode == "approx") {
    return approx_tsp(inst, all);
  }
  return best_available_tsp(inst, all);
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto inst = io::load_instance(a.instance, a.round);
  const auto id = parse_algorithm(a.alg);
  if (!id) {
    err << "unknown algorithm: " << a.alg << "\n";
    return kUsage;
  }
  SolveParams p;
  if (!a.delta.empty()) {
    p.delta = Rational::parse(a.delta);
  }
  p.gamma = a.gamma;
  p.gamma1 = a.gamma1;
  p.gamma2 = a.gamma2;
  p.seed = a.seed;
  p.trace = a.trace;
  p.dump_lp = a.dump_lp;
  if (*id != AlgorithmId::exact) {
    p.tour = pick_tour(inst, a.tour);
  }
  const auto res = run_algorithm(inst, *id, p);
  auto doc = to_json(res.report);
  doc["instance"] = inst.name();
  auto& tours = doc["tours"] = nlohmann::json::array();
  for (std::size_t t = 0; t < res.solution.tours.size(); ++t) {
    tours.push_back({{"vertices", res.solution.tours[t].vertices},
                     {"serves", res.solution.served[t]},
                     {"cost", res.solution.tours[t].cost}});
  }
  out << doc.dump(2) << "\n";
  const bool certs_ok =
      std::all_of(res.report.certificates.begin(), res.report.certificates.end(),
                  [](const BoundCertificate& c) { return c.holds; });
  if (!res.report.feasible || !certs_ok) {
    err << "invariant violated: "
        << (res.report.feasible ? "bound certificate failed"
                                : res.report.feasibility)
        << "\n";
    return kViolation;
  }
  return kOk;
}

int cmd_exact(const std::string& path, bool round, std::ostream& out) {
  const auto inst = io::load_instance(path, round);
  const auto r = exact_cvrp(inst);
  auto doc = to_json(r);
  doc["instance"] = inst.name();
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_constants(const ConstantsArgs& a, std::ostream& out) {
  const auto r = constants_report(a.eps_fixed, a.eps_general);
  auto doc = to_json(r);
  if (!a.eps.empty()) {
    auto& extra = doc["f_eps"] = nlohmann::json::array();
    for (const double e : a.eps) {
      extra.push_back(to_json(f_epsilon(e)));
    }
  }
  if (a.format == "table") {
    out << to_table(r);
    for (const double e : a.eps) {
      out << "f(" << e << ")" << std::string(26, ' ') << f_epsilon(e).value
          << "\n";
    }
  } else {
    out << doc.dump(2) << "\n";
  }
  bool ok = true;
  for (const auto& [name, value] : doc["checks"].items()) {
    ok = ok && value.get<bool>();
  }
  return ok ? kOk : kViolation;
}

int cmd_check(const std::string& dir, std::uint64_t seed, int oracle_limit,
              std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    err << "not a directory: " << dir << "\n";
    return kUsage;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      const auto ext = entry.path().extension().string();
      if (ext == ".json" || ext == ".vrp") {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  InvariantSummary summary;
  for (const auto& f : files) {
    try {
      check_instance(io::load_instance(f), f.filename().string(), summary, seed,
                     oracle_limit);
    } catch (const std::exception& e) {
      summary.failures.push_back({f.filename().string(), "load/run", e.what()});
    }
  }
  out << to_json(summary).dump(2) << "\n";
  return summary.failures.empty() ? kOk : kViolation;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchOptions opt;
  opt.suite = a.suite;
  opt.seeds = a.seeds;
  opt.timing = a.timing;
  const auto rows = run_bench(opt);
  if (a.format == "csv") {
    out << to_csv(rows);
  } else {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
      doc.push_back(to_json(r));
    }
    out << doc.dump(2) << "\n";
  }
  return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Unsplittable CVRP approximation algorithms"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a generated instance as JSON");
  g->add_option("--kind", gen.kind)
      ->check(CLI::IsMember({"euclidean", "random"}));
  g->add_option("-n", gen.n, "customers")->check(CLI::Range(1, 1 << 20));
  g->add_option("-k", gen.k, "capacity")->check(CLI::Range(1, 1 << 30));
  g->add_option("--law", gen.law)->check(CLI::IsMember({"uniform", "heavy"}));
  g->add_option("--seed", gen.seed);
  g->add_option("--name", gen.name);
  g->add_option("-o,--out", gen.out, "output file (stdout when omitted)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run one algorithm on an instance");
  s->add_option("instance", solve.instance)->required();
  s->add_option("--alg", solve.alg)
      ->check(CLI::IsMember({"itp", "ditp", "ditp+", "subalg1", "subalg2",
                             "subalg3", "subalg4", "alg1", "alg2", "exact"}));
  s->add_option("--delta", solve.delta, "threshold, e.g. 1/5 or 0.2");
  s->add_option("--gamma", solve.gamma);
  s->add_option("--gamma1", solve.gamma1);
  s->add_option("--gamma2", solve.gamma2);
  s->add_option("--seed", solve.seed);
  s->add_flag("--trace", solve.trace, "include partition / matching traces");
  s->add_flag("--dump-lp", solve.dump_lp, "include the catalog and LP solution");
  s->add_option("--tour", solve.tour)
      ->check(CLI::IsMember({"auto", "exact", "approx"}));
  s->add_flag("--round-euc2d", solve.round, "TSPLIB integer rounding");

  std::string exact_path;
  bool exact_round = false;
  auto* e = app.add_subcommand("exact", "Optimal solution by subset DP");
  e->add_option("instance", exact_path)->required();
  e->add_flag("--round-euc2d", exact_round);

  ConstantsArgs consts;
  auto* c = app.add_subcommand("constants", "Print every analytic constant");
  c->add_option("--eps-fixed", consts.eps_fixed);
  c->add_option("--eps-general", consts.eps_general);
  c->add_option("--eps", consts.eps, "extra f(eps) evaluations");
  c->add_option("--format", consts.format)->check(CLI::IsMember({"json", "table"}));

  std::string check_dir;
  std::uint64_t check_seed = 0;
  int check_oracle = 9;
  auto* ch = app.add_subcommand("check", "Run the invariant suite on a directory");
  ch->add_option("dir", check_dir)->required();
  ch->add_option("--seed", check_seed);
  ch->add_option("--oracle-limit", check_oracle, "largest n checked against OPT");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Benchmark rows against the oracle");
  b->add_option("--suite", bench.suite)->check(CLI::IsMember({"small", "ratio"}));
  b->add_option("--seeds", bench.seeds)->check(CLI::Range(1, 100000));
  b->add_option("--format", bench.format)->check(CLI::IsMember({"json", "csv"}));
  b->add_flag("--timing", bench.timing, "add wall-clock milliseconds per row");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (g->parsed()) {
      return cmd_gen(gen, out);
    }
    if (s->parsed()) {
      return cmd_solve(solve, out, err);
    }
    if (e->parsed()) {
      return cmd_exact(exact_path, exact_round, out);
    }
    if (c->parsed()) {
      return cmd_constants(consts, out);
    }
    if (ch->parsed()) {
      return cmd_check(check_dir, check_seed, check_oracle, out, err);
    }
    if (b->parsed()) {
      return cmd_bench(bench, out);
    }
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kViolation;
  }
  return kUsage;
}

} // namespace ucvrp::cli
