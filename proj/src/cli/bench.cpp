#include <chrono>
#include <sstream>

#include "ucvrp/algorithms.hpp"
#include "ucvrp/cli.hpp"
#include "ucvrp/oracle.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp::cli {

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_field(const std::optional<double>& v) {
  if (!v) {
    return "";
  }
  std::ostringstream s;
  s.precision(12);
  s << *v;
  return s.str();
}

std::string csv_field(double v) { return csv_field(std::optional<double>(v)); }

} // namespace

std::vector<std::pair<std::string, Instance>> bench_instances(
    const std::string& suite) {
  std::vector<std::pair<std::string, Instance>> out;
  if (suite == "small") {
    for (int i = 0; i < 12; ++i) {
      const auto kind = i % 2 == 0 ? MetricKind::euclidean : MetricKind::random_metric;
      const int n = 5 + i % 5;
      const int k = 2 + i % 3;
      const auto law = (i / 6) % 2 == 0 ? DemandLaw::uniform : DemandLaw::heavy_tail;
      out.emplace_back("small-" + std::to_string(i),
                       gen_instance(kind, n, k, law, 1000 + i));
    }
  } else if (suite == "ratio") {
    for (int i = 0; i < 20; ++i) {
      const auto kind = i % 2 == 0 ? MetricKind::euclidean : MetricKind::random_metric;
      const int n = 6 + i % 4;
      const int k = 3 + i % 2;
      out.emplace_back("ratio-" + std::to_string(i),
                       gen_instance(kind, n, k, DemandLaw::uniform, 2000 + i));
    }
  } else {
    throw std::invalid_argument("unknown bench suite: " + suite);
  }
  return out;
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  std::vector<AlgorithmId> algorithms;
  if (options.suite == "small") {
    algorithms = {AlgorithmId::itp,     AlgorithmId::ditp,
                  AlgorithmId::ditp_plus, AlgorithmId::subalg1,
                  AlgorithmId::subalg2, AlgorithmId::subalg3,
                  AlgorithmId::subalg4, AlgorithmId::alg1,
                  AlgorithmId::alg2};
  } else {
    algorithms = {AlgorithmId::subalg1, AlgorithmId::alg1, AlgorithmId::alg2};
  }
  std::vector<BenchRow> rows;
  for (const auto& [id, inst] : bench_instances(options.suite)) {
    const double opt = exact_cvrp(inst).opt_cost;
    SolveParams base;
    base.tour = exact_tsp(inst, inst.customers());
    for (const auto alg : algorithms) {
      for (int s = 0; s < options.seeds; ++s) {
        SolveParams p = base;
        p.seed = static_cast<std::uint64_t>(s);
        const auto start = std::chrono::steady_clock::now();
        const auto res = run_algorithm(inst, alg, p);
        const auto stop = std::chrono::steady_clock::now();
        BenchRow row;
        row.instance = id;
        row.n = inst.n();
        row.k = inst.capacity();
        row.algorithm = std::string(to_string(alg));
        row.params = res.report.params;
        row.cost = res.report.cost;
        row.opt = opt;
        row.ratio = opt > 0.0 ? res.report.cost / opt : 1.0;
        row.bound = res.report.ratio_bound;
        row.radial = res.report.radial_bound;
        row.tsp = res.report.tsp_bound;
        row.lp = res.report.lp_bound;
        if (options.timing) {
          row.wall_ms =
              std::chrono::duration<double, std::milli>(stop - start).count();
        }
        row.seed = p.seed;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

nlohmann::json to_json(const BenchRow& row) {
  nlohmann::json doc;
  doc["instance"] = row.instance;
  doc["n"] = row.n;
  doc["k"] = row.k;
  doc["algorithm"] = row.algorithm;
  doc["params"] = row.params;
  doc["cost"] = row.cost;
  doc["opt"] = opt_json(row.opt);
  doc["ratio"] = opt_json(row.ratio);
  doc["bound"] = opt_json(row.bound);
  doc["lower_bounds"] = {
      {"radial", row.radial}, {"tsp", row.tsp}, {"lp", opt_json(row.lp)}};
  doc["wall_ms"] = opt_json(row.wall_ms);
  doc["seed"] = row.seed;
  return doc;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance,n,k,algorithm,cost,opt,ratio,bound,radial,tsp,lp,wall_ms,seed\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << r.k << ',' << r.algorithm << ','
        << csv_field(r.cost) << ',' << csv_field(r.opt) << ','
        << csv_field(r.ratio) << ',' << csv_field(r.bound) << ','
        << csv_field(r.radial) << ',' << csv_field(r.tsp) << ','
        << csv_field(r.lp) << ',' << csv_field(r.wall_ms) << ',' << r.seed
        << '\n';
  }
  return out.str();
}

} // namespace ucvrp::cli
