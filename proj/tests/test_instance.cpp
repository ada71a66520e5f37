#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ucvrp/errors.hpp"
#include "ucvrp/io.hpp"

using namespace ucvrp;
using ref::line_instance;
using ref::matrix_instance;

namespace {

std::vector<double> line3_matrix() {
  std::vector<double> m(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m[i * 4 + j] = std::abs(i - j);
    }
  }
  return m;
}

} // namespace

TEST(Validate, Line3Accepted) {
  const auto inst = line3();
  EXPECT_EQ(inst.n(), 3);
  EXPECT_EQ(inst.capacity(), 2);
  EXPECT_EQ(inst.cost(1, 3), 2.0);
}

TEST(Validate, TriangleViolationNamesTheTriple) {
  auto m = line3_matrix();
  m[1 * 4 + 3] = m[3 * 4 + 1] = 3.5;
  try {
    matrix_instance(m, {1, 1, 1}, 2);
    FAIL() << "accepted a non-metric";
  } catch (const TriangleViolation& e) {
    EXPECT_EQ(e.x, 1);
    EXPECT_EQ(e.y, 3);
    EXPECT_EQ(e.z, 2);
  }
}

TEST(Validate, RejectsAsymmetryAndBadDemands) {
  auto m = line3_matrix();
  m[1 * 4 + 2] = 1.5;
  EXPECT_THROW(matrix_instance(m, {1, 1, 1}, 2), AsymmetricCost);
  EXPECT_THROW(matrix_instance(line3_matrix(), {1, 3, 1}, 2), DemandOutOfRange);
  EXPECT_THROW(matrix_instance(line3_matrix(), {0, 1, 1}, 2), DemandOutOfRange);
  EXPECT_THROW(matrix_instance(line3_matrix(), {1, 1}, 2), MalformedInstance);
}

TEST(Validate, SingleCustomer) {
  const auto inst = matrix_instance({0, 5, 5, 0}, {1}, 1);
  EXPECT_EQ(inst.n(), 1);
  EXPECT_EQ(radial_lower_bound(inst), 10.0);
}

TEST(Radial, Examples) {
  EXPECT_DOUBLE_EQ(radial_lower_bound(line3()), 6.0);
  const auto at_depot = matrix_instance({0, 0, 0, 0}, {1}, 1);
  EXPECT_EQ(radial_lower_bound(at_depot), 0.0);
  EXPECT_THROW(f_integral(at_depot, Rational(0), Rational(1), 1), ZeroRadialMass);
}

TEST(FIntegral, Line3Examples) {
  const auto inst = line3();
  EXPECT_EQ(f_integral(inst, Rational(0), Rational(1), 1), 1.0);
  EXPECT_EQ(f_integral(inst, Rational(1, 3), Rational(1, 2), 0), 2.0);
  EXPECT_EQ(f_integral(inst, Rational(1, 2), Rational(1), 0), 0.0);
}

TEST(Classify, Examples) {
  const auto inst = line3();
  auto c = classify(inst, Rational(1, 3));
  EXPECT_TRUE(c.small.empty());
  EXPECT_EQ(c.big, (CustomerSet{1, 2, 3}));
  EXPECT_TRUE(c.large.empty());
  c = classify(inst, Rational(1, 2));
  EXPECT_EQ(c.small, (CustomerSet{1, 2, 3}));
  const auto mixed = line_instance({1, 2, 3}, {1, 2, 3}, 4);
  c = classify(mixed, Rational(1, 3));
  EXPECT_EQ(c.small, CustomerSet{1});
  EXPECT_EQ(c.big, CustomerSet{2});
  EXPECT_EQ(c.large, CustomerSet{3});
}

TEST(Generate, Deterministic) {
  const auto a = gen_instance(MetricKind::euclidean, 5, 3, DemandLaw::uniform, 7);
  const auto b = gen_instance(MetricKind::euclidean, 5, 3, DemandLaw::uniform, 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(io::instance_to_json(a).dump(), io::instance_to_json(b).dump());
  const auto c = gen_instance(MetricKind::euclidean, 5, 3, DemandLaw::uniform, 8);
  EXPECT_NE(a, c);
}

TEST(Generate, RandomMetricRevalidates) {
  for (std::uint64_t seed = 1; seed < 30; ++seed) {
    const auto inst =
        gen_instance(MetricKind::random_metric, 8, 4, DemandLaw::uniform, seed);
    RawInstance raw;
    raw.capacity = inst.capacity();
    raw.demands.assign(inst.demands().begin(), inst.demands().end());
    raw.matrix = inst.matrix();
    EXPECT_NO_THROW(validate_instance(raw)) << seed;
  }
}

TEST(Generate, SingleUnitCustomer) {
  const auto inst = gen_instance(MetricKind::euclidean, 1, 1, DemandLaw::uniform, 0);
  EXPECT_EQ(inst.n(), 1);
  EXPECT_EQ(inst.demand(1), 1);
}

// Independent oracle: Σ d̂ c(r,v) over (l,r] by direct summation.
TEST(FIntegral, MassIdentityAndSandwich) {
  const Rational grid[] = {Rational(0), Rational(1, 5), Rational(1, 3),
                           Rational(1, 2), Rational(1)};
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = gen_instance(seed % 2 ? MetricKind::random_metric
                                            : MetricKind::euclidean,
                                   3 + seed % 9, 1 + seed % 7,
                                   seed % 3 ? DemandLaw::uniform
                                            : DemandLaw::heavy_tail,
                                   seed);
    double radial = 0.0;
    for (int v = 1; v <= inst.n(); ++v) {
      radial += 2.0 * inst.norm_demand(v).to_double() * inst.cost(0, v);
    }
    EXPECT_NEAR(radial_lower_bound(inst), radial, 1e-9);
    EXPECT_EQ(f_integral(inst, Rational(0), Rational(1), 1), 1.0);
    for (std::size_t a = 0; a < 5; ++a) {
      for (std::size_t b = a + 1; b < 5; ++b) {
        double num = 0.0;
        bool any = false;
        for (int v = 1; v <= inst.n(); ++v) {
          const auto d = inst.norm_demand(v);
          if (grid[a] < d && d <= grid[b]) {
            num += 2.0 * inst.cost(0, v);
            any = any || inst.cost(0, v) > 0.0;
          }
        }
        const double mass = f_integral(inst, grid[a], grid[b], 0);
        const double first = f_integral(inst, grid[a], grid[b], 1);
        EXPECT_NEAR(mass, num / radial, 1e-9);
        EXPECT_LE(grid[a].to_double() * mass, first + 1e-12);
        EXPECT_LE(first, grid[b].to_double() * mass + 1e-12);
        if (any) {
          EXPECT_LT(grid[a].to_double() * mass, first);
        }
      }
    }
  }
}
