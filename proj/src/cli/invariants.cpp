#include <algorithm>
#include <cmath>
#include <sstream>

#include "ucvrp/algorithms.hpp"
#include "ucvrp/cli.hpp"
#include "ucvrp/errors.hpp"
#include "ucvrp/itp.hpp"
#include "ucvrp/lp.hpp"
#include "ucvrp/matching.hpp"
#include "ucvrp/oracle.hpp"
#include "ucvrp/random.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp::cli {

namespace {

constexpr double kTol = 1e-6;

std::string num(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

class Checker {
public:
  Checker(std::string id, InvariantSummary& summary)
      : id_(std::move(id)), summary_(summary) {}

  void expect(bool ok, const std::string& name, const std::string& detail) {
    ++summary_.checks;
    if (!ok) {
      summary_.failures.push_back({id_, name, detail});
    }
  }

  void at_most(double lhs, double rhs, const std::string& name) {
    expect(lhs <= rhs + kTol * std::max(1.0, std::abs(rhs)), name,
           num(lhs) + " > " + num(rhs));
  }

private:
  std::string id_;
  InvariantSummary& summary_;
};

} // namespace

void check_instance(const Instance& inst, const std::string& id,
                    InvariantSummary& summary, std::uint64_t seed,
                    int oracle_limit) {
  ++summary.instances;
  Checker check(id, summary);
  const auto all = inst.customers();
  const double radial = radial_lower_bound(inst);

  // Normalised radial distribution identities.
  if (radial > 0.0) {
    check.expect(f_integral(inst, Rational(0), Rational(1), 1) == 1.0,
                 "radial distribution integrates to 1",
                 num(f_integral(inst, Rational(0), Rational(1), 1)));
    const Rational grid[] = {Rational(0), Rational(1, 5), Rational(1, 3),
                             Rational(1, 2), Rational(1)};
    for (std::size_t a = 0; a < std::size(grid); ++a) {
      for (std::size_t b = a + 1; b < std::size(grid); ++b) {
        const double mass = f_integral(inst, grid[a], grid[b], 0);
        const double first = f_integral(inst, grid[a], grid[b], 1);
        const double l = grid[a].to_double();
        const double r = grid[b].to_double();
        check.expect(l * mass <= first + 1e-12 && first <= r * mass + 1e-12,
                     "radial distribution sandwich",
                     "(" + grid[a].str() + ", " + grid[b].str() + "]");
      }
    }
  }

  const Tour tour = best_available_tsp(inst, all);
  check.expect(std::abs(walk_cost(inst, tour.vertices) - tour.cost) <= 1e-9,
               "tour cost", num(tour.cost));

  // Shortcut monotonicity on a random keep set.
  SplitMix64 rng(seed ^ 0x5c0ffee);
  std::vector<int> keep;
  for (const int v : all) {
    if (rng.uniform() < 0.5) {
      keep.push_back(v);
    }
  }
  check.at_most(shortcut(inst, tour, keep).cost, tour.cost, "shortcut monotone");

  // Partition bounds.
  const Rational deltas[] = {Rational(0), Rational(1, 10), Rational(1, 3),
                             Rational(49, 100)};
  for (const auto& delta : deltas) {
    const std::string tag = " delta=" + delta.str();
    const auto r = delta_itp(inst, tour, delta);
    check.expect(check_feasible(inst, r.solution).ok(), "ditp feasible" + tag,
                 check_feasible(inst, r.solution).describe());
    const double l3 = itp_bound(inst, all, tour.cost, delta, ItpBound::lemma3);
    check.at_most(r.solution.cost, l3, "ditp within lemma-3 bound" + tag);
    check.expect(r.trace.mean_candidate_cost + 1e-9 >= r.solution.cost,
                 "ditp minimum below candidate mean" + tag,
                 num(r.trace.mean_candidate_cost));
    if (delta == Rational(0)) {
      check.at_most(r.solution.cost,
                    itp_bound(inst, all, tour.cost, delta, ItpBound::lemma1),
                    "itp within lemma-1 bound");
    }
    CustomerSet rest;
    for (const int v : all) {
      if (inst.norm_demand(v) <= Rational(1, 2)) {
        rest.push_back(v);
      }
    }
    const Tour sub = shortcut(inst, tour, rest);
    const auto plus = delta_itp_plus(inst, all, sub, delta);
    check.expect(check_feasible(inst, plus.solution).ok(),
                 "ditp+ feasible" + tag,
                 check_feasible(inst, plus.solution).describe());
    const double l4 = itp_bound(inst, all, sub.cost, delta, ItpBound::lemma4);
    check.at_most(plus.solution.cost, l4, "ditp+ within lemma-4 bound" + tag);
    check.at_most(l4, itp_bound(inst, all, sub.cost, delta, ItpBound::lemma3),
                  "lemma-4 bound below lemma-3 bound" + tag);
  }

  const auto s1 = subalg1(inst, tour);
  check.expect(check_feasible(inst, s1.solution).ok(), "subalg1 feasible",
               check_feasible(inst, s1.solution).describe());
  check.at_most(s1.solution.cost, s1.bound, "subalg1 within bound");

  if (inst.n() > oracle_limit) {
    return;
  }
  const double opt = exact_cvrp(inst).opt_cost;
  check.at_most(radial, opt, "radial bound <= OPT");
  check.at_most(exact_tsp(inst, all).cost, opt, "TSP bound <= OPT");
  check.at_most(serve_big_by_matching(inst).plan.cost, opt, "matching <= OPT");
  const auto lp1 = build_lp(inst, LpVariant::lp1, Rational(0));
  check.at_most(lp1.lp.objective, opt, "LP-1 <= OPT");
  const auto lp2 = build_lp(inst, LpVariant::lp2, Rational(1, 5));
  check.at_most(lp2.lp.objective, opt, "LP-2 <= OPT");
  for (const auto id : {AlgorithmId::alg1, AlgorithmId::alg2}) {
    SolveParams p;
    p.seed = seed;
    p.tour = tour;
    const auto res = run_algorithm(inst, id, p);
    check.expect(res.report.feasible,
                 std::string(to_string(id)) + " feasible", res.report.feasibility);
    check.at_most(opt, res.report.cost,
                  std::string(to_string(id)) + " not below OPT");
  }
}

nlohmann::json to_json(const InvariantSummary& s) {
  nlohmann::json doc;
  doc["instances"] = s.instances;
  doc["checks"] = s.checks;
  auto& f = doc["failures"] = nlohmann::json::array();
  for (const auto& x : s.failures) {
    f.push_back(
        {{"instance", x.instance}, {"invariant", x.invariant}, {"detail", x.detail}});
  }
  doc["ok"] = s.failures.empty();
  return doc;
}

} // namespace ucvrp::cli
