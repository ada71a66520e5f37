#include <gtest/gtest.h>

#include <cmath>

#include "ucvrp/constants.hpp"
#include "ucvrp/errors.hpp"

using namespace ucvrp;

TEST(Bisect, CertifiesSignChange) {
  const auto e = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-13);
  EXPECT_LE(e.lo, std::sqrt(2.0));
  EXPECT_GE(e.hi, std::sqrt(2.0));
  EXPECT_LE(e.width(), 1e-13);
  EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, 0.0, 2.0), NoSignChange);
}

TEST(Y0, EnclosureAndUniqueness) {
  const auto y0 = solve_y0();
  EXPECT_GT(y0.lo, 0.39312);
  EXPECT_LT(y0.hi, 0.3932);
  EXPECT_LT(balance_fixed(0.3932), 0.0);
  EXPECT_LT(balance_fixed(y0.lo) * balance_fixed(y0.hi), 0.0);
  EXPECT_LT(std::abs(balance_fixed(y0.mid())), 1e-12);
  EXPECT_EQ(count_sign_changes([](double y) { return balance_fixed(y); }, 1e-9, 1.0),
            1);
  EXPECT_LT(std::abs(std::log(2.0 - y0.mid() / 2.0) - 1.5 * y0.mid()), 1e-10);
}

TEST(Y1, EnclosureAndCompanions) {
  const auto y1 = solve_y1();
  EXPECT_GT(y1.lo, 0.17458);
  EXPECT_LT(balance_general(y1.lo) * balance_general(y1.hi), 0.0);
  const auto y2 = y2_enclosure(y1);
  EXPECT_GT(y2.lo, 0.27);
  EXPECT_LT(y2.hi, 0.28);
  EXPECT_NEAR(y2.mid(), 4.0 * (1.0 - y1.mid()) * (1.0 - std::exp(-y1.mid() / 2.0)),
              1e-10);
  EXPECT_GT(gamma2(), 0.501);
  EXPECT_LT(gamma2(), 0.502);
  EXPECT_NEAR(gamma2(), std::log(2.0 - 2.0 * y1.mid()), 1e-10);
}

TEST(Ratios, AbstractBounds) {
  EXPECT_LT(ratio_alg1(1.5).hi, 3.0897);
  EXPECT_LT(ratio_alg2(1.5, 1e-10).hi, 3.1759);
  const auto r1 = ratio_alg1(1.0);
  EXPECT_GT(r1.lo, 2.5896);
  EXPECT_LT(r1.hi, 2.5898);
  EXPECT_NEAR(gamma_star(), std::log(2.0 - solve_y0().mid() / 2.0), 1e-10);
}

TEST(Penalty, WitnessValues) {
  const auto a = f_epsilon(0.000335);
  const auto b = f_epsilon(0.000334);
  EXPECT_LT(a.value, 0.49967);
  EXPECT_LT(b.value, 0.49915);
  EXPECT_NEAR(a.value, tour_penalty(a.theta, a.tau, a.rho, a.eps), 1e-12);
  EXPECT_NEAR(a.zeta, penalty_zeta(a.tau, a.rho, a.eps), 1e-12);
  EXPECT_LT(f_epsilon(0.0001).value, f_epsilon(0.001).value);
}

TEST(Appendix, Claims) {
  const auto r = appendix_a2();
  EXPECT_GT(r.y0_eps.lo, 0.39305);
  EXPECT_GT(r.y1_eps.lo, 0.17457);
  EXPECT_LE(r.final_fixed, 3.0894);
  EXPECT_LT(r.hard_general, 3.1751);
  EXPECT_LE(r.final_general, 3.1755);
  EXPECT_GE(r.improvement_fixed, 0.00031);
  EXPECT_GE(r.improvement_general, 0.00039);
}

TEST(Report, AllChecksPass) {
  const auto doc = to_json(constants_report());
  ASSERT_TRUE(doc.contains("checks"));
  for (const auto& [name, ok] : doc["checks"].items()) {
    EXPECT_TRUE(ok.get<bool>()) << name;
  }
  EXPECT_FALSE(to_table(constants_report()).empty());
}
