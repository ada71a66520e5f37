#include <gtest/gtest.h>

#include "ucvrp/solution.hpp"
#include "ucvrp/tsp.hpp"

using namespace ucvrp;

namespace {

Solution line3_natural() {
  const auto inst = line3();
  Solution s;
  s.add(make_tour(inst, std::vector<int>{1}), {1});
  s.add(make_tour(inst, std::vector<int>{2, 3}), {2, 3});
  return s;
}

} // namespace

TEST(CheckFeasible, Line3Natural) {
  const auto s = line3_natural();
  EXPECT_EQ(s.cost, 8.0);
  EXPECT_TRUE(check_feasible(line3(), s).ok());
}

TEST(CheckFeasible, ServedOffTour) {
  auto s = line3_natural();
  s.served[0] = {1, 2};
  s.served[1] = {3};
  const auto r = check_feasible(line3(), s);
  EXPECT_EQ(r.violation, Violation::served_off_tour);
  EXPECT_EQ(r.vertex, 2);
}

TEST(CheckFeasible, CustomerUnserved) {
  auto s = line3_natural();
  s.served[1] = {2};
  const auto r = check_feasible(line3(), s);
  EXPECT_EQ(r.violation, Violation::customer_unserved);
  EXPECT_EQ(r.vertex, 3);
}

TEST(CheckFeasible, CapacityAndDuplicates) {
  const auto inst = line3();
  Solution s;
  s.add(make_tour(inst, std::vector<int>{1, 2, 3}), {1, 2, 3});
  EXPECT_EQ(check_feasible(inst, s).violation, Violation::capacity_exceeded);
  auto d = line3_natural();
  d.add(trivial_tour(inst, 1), {1});
  EXPECT_EQ(check_feasible(inst, d).violation, Violation::customer_multiply_served);
}

TEST(CheckFeasible, CostMismatchAndRequiredSubset) {
  const auto inst = line3();
  auto s = line3_natural();
  s.cost += 1.0;
  EXPECT_EQ(check_feasible(inst, s).violation, Violation::cost_mismatch);
  Solution partial;
  partial.add(trivial_tour(inst, 2), {2});
  const std::vector<int> req{2};
  EXPECT_TRUE(check_feasible(inst, partial, req).ok());
  EXPECT_FALSE(check_feasible(inst, partial).ok());
}

TEST(TrivialTour, Cost) {
  const auto t = trivial_tour(line3(), 3);
  EXPECT_EQ(t.cost, 6.0);
  EXPECT_EQ(t.vertices, (std::vector<int>{0, 3, 0}));
}
