#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ucvrp/errors.hpp"
#include "ucvrp/oracle.hpp"

using namespace ucvrp;

TEST(ExactCvrp, Line3) {
  const auto r = exact_cvrp(line3());
  EXPECT_EQ(r.opt_cost, 8.0);
  EXPECT_EQ(r.groups, (std::vector<CustomerSet>{{1}, {2, 3}}));
  EXPECT_EQ(r.group_costs, (std::vector<double>{2.0, 6.0}));
  EXPECT_TRUE(check_feasible(line3(), r.solution).ok());
  EXPECT_EQ(to_json(r)["opt_cost"], 8.0);
}

TEST(ExactCvrp, SingleAndForcedSingletons) {
  EXPECT_EQ(exact_cvrp(ref::line_instance({5}, {1}, 1)).opt_cost, 10.0);
  EXPECT_EQ(exact_cvrp(ref::line_instance({2, 3}, {4, 4}, 4)).opt_cost, 10.0);
}

TEST(ExactCvrp, MatchesPartitionEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = gen_instance(seed % 2 ? MetricKind::random_metric
                                            : MetricKind::euclidean,
                                   2 + static_cast<int>(seed % 6), 1 + seed % 4,
                                   seed % 3 ? DemandLaw::uniform : DemandLaw::heavy_tail,
                                   seed);
    const auto r = exact_cvrp(inst);
    EXPECT_NEAR(r.opt_cost, ref::brute_cvrp(inst), 1e-9) << seed;
    EXPECT_TRUE(check_feasible(inst, r.solution).ok());
    EXPECT_NEAR(r.solution.cost, r.opt_cost, 1e-9);
  }
}

TEST(ExactCvrp, Cap) {
  const auto inst = gen_instance(MetricKind::euclidean, 8, 3, DemandLaw::uniform, 1);
  EXPECT_THROW(exact_cvrp(inst, 7), InstanceTooLarge);
}
