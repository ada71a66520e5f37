#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ucvrp/kernels.hpp"
#include "ucvrp/random.hpp"

namespace k = ucvrp::kernels;

namespace {

std::vector<double> random_vector(ucvrp::SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) {
    x = rng.uniform() * 100.0;
  }
  return v;
}

} // namespace

TEST(Kernels, ActiveIsOneOfTheTables) {
  const auto& a = k::active();
  EXPECT_TRUE(&a == &k::scalar_table() || &a == k::avx2_table());
}

TEST(Kernels, RelaxMinMatchesScalar) {
  const auto* w = k::avx2_table();
  if (w == nullptr) {
    GTEST_SKIP();
  }
  ucvrp::SplitMix64 rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1000u}) {
    auto best_a = random_vector(rng, n);
    auto best_b = best_a;
    const auto row = random_vector(rng, n);
    k::scalar_table().relax_min(best_a, row, -20.0);
    w->relax_min(best_b, row, -20.0);
    EXPECT_EQ(best_a, best_b) << n;
  }
}

TEST(Kernels, RelaxMinArgMatchesScalar) {
  const auto* w = k::avx2_table();
  if (w == nullptr) {
    GTEST_SKIP();
  }
  ucvrp::SplitMix64 rng(2);
  for (std::size_t n : {1u, 5u, 8u, 31u, 257u}) {
    auto best_a = random_vector(rng, n);
    auto best_b = best_a;
    std::vector<std::int32_t> arg_a(n, -1);
    auto arg_b = arg_a;
    for (int label = 0; label < 4; ++label) {
      auto row = random_vector(rng, n);
      row[0] = best_a[0]; // ties must not relabel
      k::scalar_table().relax_min_arg(best_a, arg_a, row, label);
      w->relax_min_arg(best_b, arg_b, row, label);
    }
    EXPECT_EQ(best_a, best_b);
    EXPECT_EQ(arg_a, arg_b);
  }
}

TEST(Kernels, ArgMinMatchesScalarIncludingTiesAndRetired) {
  const auto* w = k::avx2_table();
  if (w == nullptr) {
    GTEST_SKIP();
  }
  ucvrp::SplitMix64 rng(3);
  const double retired = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next() % 70;
    std::vector<double> v(n);
    for (auto& x : v) {
      x = static_cast<double>(rng.next() % 5);
      if (rng.uniform() < 0.2) {
        x = retired;
      }
    }
    EXPECT_EQ(k::scalar_table().argmin(v), w->argmin(v)) << trial;
  }
  const std::vector<double> all_retired(9, retired);
  EXPECT_EQ(k::scalar_table().argmin(all_retired), -1);
  EXPECT_EQ(w->argmin(all_retired), -1);
  EXPECT_EQ(w->argmin({}), -1);
}

TEST(Kernels, DotMatchesScalarWithinRounding) {
  const auto* w = k::avx2_table();
  if (w == nullptr) {
    GTEST_SKIP();
  }
  ucvrp::SplitMix64 rng(4);
  for (std::size_t n : {0u, 1u, 6u, 64u, 999u}) {
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    const double s = k::scalar_table().dot(a, b);
    EXPECT_NEAR(s, w->dot(a, b), 1e-12 * std::max(1.0, std::abs(s)));
  }
}

TEST(Kernels, PenaltyBatchMatchesScalarBitwise) {
  const auto* w = k::avx2_table();
  if (w == nullptr) {
    GTEST_SKIP();
  }
  ucvrp::SplitMix64 rng(5);
  const std::size_t n = 103;
  std::vector<double> theta(n), tau(n), rho(n), a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    tau[i] = 0.01 + 0.3 * rng.uniform();
    rho[i] = 0.01 + 0.3 * rng.uniform();
    theta[i] = (0.2 + 0.7 * rng.uniform()) * (1.0 - tau[i]);
  }
  k::scalar_table().penalty_batch(theta, tau, rho, 0.000335, a);
  w->penalty_batch(theta, tau, rho, 0.000335, b);
  EXPECT_EQ(a, b);
}
