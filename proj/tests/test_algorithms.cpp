#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "ucvrp/algorithms.hpp"
#include "ucvrp/constants.hpp"
#include "ucvrp/oracle.hpp"
#include "ucvrp/tsp.hpp"

using namespace ucvrp;

namespace {

Tour line3_tour() { return make_tour(line3(), std::vector<int>{1, 2, 3}); }

const AlgorithmId kAll[] = {AlgorithmId::itp,     AlgorithmId::ditp,
                            AlgorithmId::ditp_plus, AlgorithmId::subalg1,
                            AlgorithmId::subalg2, AlgorithmId::subalg3,
                            AlgorithmId::subalg4, AlgorithmId::alg1,
                            AlgorithmId::alg2,    AlgorithmId::exact};

} // namespace

TEST(Names, RoundTrip) {
  for (const auto id : kAll) {
    EXPECT_EQ(parse_algorithm(to_string(id)), id);
  }
  EXPECT_EQ(to_string(AlgorithmId::ditp_plus), "ditp+");
  EXPECT_FALSE(parse_algorithm("alg3").has_value());
}

TEST(Pipeline, GammaZeroSkipsLp) {
  const auto inst = line3();
  const auto r = lp_itp_pipeline(inst, LpVariant::lp1, Rational(0), 0.0,
                                 Rational(1, 3), 0, line3_tour());
  EXPECT_FALSE(r.lp_solved);
  EXPECT_FALSE(r.lp_objective.has_value());
  EXPECT_EQ(r.leftover, (CustomerSet{1, 2, 3}));
  EXPECT_EQ(r.solution.cost, 8.0);
  EXPECT_TRUE(check_feasible(inst, r.solution).ok());
}

TEST(Pipeline, LargeGammaCoversEverything) {
  const auto inst = line3();
  const auto ctx = build_lp(inst, LpVariant::lp1, Rational(0));
  int empty_leftover = 0;
  const int seeds = 400;
  for (int s = 0; s < seeds; ++s) {
    const auto r = lp_itp_pipeline(inst, LpVariant::lp1, Rational(0), 10.0,
                                   Rational(1, 3), s, line3_tour(), &ctx);
    EXPECT_TRUE(r.lp_solved);
    EXPECT_TRUE(check_feasible(inst, r.solution).ok());
    empty_leftover += r.leftover.empty() ? 1 : 0;
  }
  EXPECT_GE(empty_leftover / static_cast<double>(seeds), 1.0 - 3.0 * std::exp(-10.0));
}

TEST(Pipeline, Lp2WithLargeDeltaStaysFeasible) {
  const auto inst = line3();
  const auto r = lp_itp_pipeline(inst, LpVariant::lp2, Rational(2, 5), 0.0,
                                 Rational(2, 5), 0, line3_tour());
  EXPECT_EQ(r.leftover, (CustomerSet{1, 2, 3}));
  EXPECT_TRUE(check_feasible(inst, r.solution).ok());
  EXPECT_LE(r.solution.cost,
            itp_bound(inst, inst.customers(), 6.0, Rational(2, 5), ItpBound::lemma4) +
                1e-9);
  for (const auto& c : r.certificates) {
    EXPECT_TRUE(c.holds) << c.name;
  }
}

TEST(Alg1, Line3) {
  SolveParams p;
  p.tour = line3_tour();
  const auto r = alg1(line3(), p);
  EXPECT_EQ(r.report.cost, 8.0);
  EXPECT_TRUE(r.report.feasible);
  EXPECT_EQ(r.report.branch_costs.at("subalg1"), 8.0);
  EXPECT_EQ(r.report.branch_costs.at("subalg2"), 8.0);
  EXPECT_TRUE(r.report.lp_solved);
}

TEST(Alg1, SingleCustomer) {
  const auto inst = ref::line_instance({4}, {2}, 3);
  const auto r = run_algorithm(inst, AlgorithmId::alg1, {});
  EXPECT_EQ(r.report.cost, 8.0);
  EXPECT_EQ(r.solution.tours.size(), 1u);
}

TEST(Alg2, Line3) {
  SolveParams p;
  p.tour = line3_tour();
  const auto r = alg2(line3(), p);
  EXPECT_EQ(r.report.cost, 8.0);
  EXPECT_TRUE(r.report.feasible);
}

TEST(Alg2, AllSmallHasEmptyCover) {
  const auto inst = ref::line_instance({1, 2, 3, 4}, {1, 1, 1, 1}, 10);
  const auto r = run_algorithm(inst, AlgorithmId::alg2, {});
  EXPECT_TRUE(r.report.feasible);
  EXPECT_FALSE(r.report.lp_solved);
  const auto plus = run_algorithm(inst, AlgorithmId::ditp_plus, [] {
    SolveParams p;
    p.delta = Rational(1, 5);
    return p;
  }());
  EXPECT_DOUBLE_EQ(r.report.cost, plus.report.cost);
}

TEST(Alg1, IsMinimumOfBranches) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = gen_instance(seed % 2 ? MetricKind::random_metric
                                            : MetricKind::euclidean,
                                   6 + static_cast<int>(seed % 4), 3,
                                   DemandLaw::uniform, seed);
    SolveParams p;
    p.seed = seed;
    const auto r = alg1(inst, p);
    for (const auto& [name, cost] : r.report.branch_costs) {
      EXPECT_LE(r.report.cost, cost) << name;
    }
    const auto s1 = run_algorithm(inst, AlgorithmId::subalg1, p);
    EXPECT_LE(r.report.cost, s1.report.cost + 1e-12);
  }
}

TEST(RunAlgorithm, EveryAlgorithmFeasibleAndNotBelowOpt) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto inst = gen_instance(seed % 2 ? MetricKind::random_metric
                                            : MetricKind::euclidean,
                                   4 + static_cast<int>(seed % 6), 2 + seed % 3,
                                   seed % 3 ? DemandLaw::uniform : DemandLaw::heavy_tail,
                                   seed);
    const double opt = exact_cvrp(inst).opt_cost;
    for (const auto id : kAll) {
      SolveParams p;
      p.seed = seed;
      const auto r = run_algorithm(inst, id, p);
      EXPECT_TRUE(r.report.feasible) << to_string(id) << " " << seed;
      EXPECT_GE(r.report.cost, opt - 1e-9 * opt) << to_string(id) << " " << seed;
      EXPECT_LE(r.report.radial_bound, opt + 1e-9);
      for (const auto& c : r.report.certificates) {
        EXPECT_TRUE(c.holds) << to_string(id) << " " << c.name;
      }
    }
  }
}

TEST(Report, JsonKeys) {
  SolveParams p;
  p.tour = line3_tour();
  p.trace = true;
  p.dump_lp = true;
  const auto r = run_algorithm(line3(), AlgorithmId::alg1, p);
  const auto doc = to_json(r.report);
  for (const char* key : {"algorithm", "params", "cost", "branch_costs",
                          "lower_bounds", "feasible", "alpha_tag", "seed",
                          "lp_solved", "certificates", "ratio_bound"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["lower_bounds"]["radial"], 6.0);
  EXPECT_TRUE(doc.contains("trace"));
  EXPECT_TRUE(doc.contains("lp"));
}

TEST(RatioBound, Alg1AndAlg2AtExactTour) {
  const auto inst = line3();
  EXPECT_NEAR(*ratio_bound(inst, AlgorithmId::alg1, {}, 1.0),
              2.0 + std::log(2.0 - solve_y0().lo / 2.0), 1e-9);
  const double y1 = solve_y1().lo;
  EXPECT_NEAR(*ratio_bound(inst, AlgorithmId::alg2, {}, 1.0),
              2.0 + y1 + std::log(2.0 - 2.0 * y1) + 0.4, 1e-9);
  EXPECT_FALSE(alpha_of(TourQuality::external).has_value());
  EXPECT_EQ(alpha_of(TourQuality::exact), 1.0);
  EXPECT_EQ(alpha_of(TourQuality::two_approx), 2.0);
}

TEST(EmpiricalRatio, Line3) {
  SolveParams p;
  p.tour = line3_tour();
  std::vector<std::uint64_t> seeds(20);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    seeds[i] = i;
  }
  const auto a = empirical_ratio(line3(), AlgorithmId::alg1, p, seeds);
  EXPECT_DOUBLE_EQ(a.mean, 1.0);
  EXPECT_EQ(a.runs, 20u);
  EXPECT_TRUE(a.all_feasible);
  EXPECT_DOUBLE_EQ(empirical_ratio(line3(), AlgorithmId::subalg1, p, {0}).mean, 1.0);
  const auto inst = gen_instance(MetricKind::euclidean, 7, 3, DemandLaw::uniform, 4);
  EXPECT_EQ(empirical_ratio(inst, AlgorithmId::exact, {}, {0, 1}).max, 1.0);
}
