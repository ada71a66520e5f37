#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ucvrp/errors.hpp"
#include "ucvrp/lp.hpp"
#include "ucvrp/random.hpp"

using namespace ucvrp;

namespace {

TourCatalog manual_catalog(CustomerSet cover, std::vector<CustomerSet> sets,
                           std::vector<double> costs) {
  TourCatalog cat;
  cat.cover = std::move(cover);
  cat.sets = std::move(sets);
  cat.costs = std::move(costs);
  for (const auto& s : cat.sets) {
    cat.keys.push_back(tour_key(s));
  }
  return cat;
}

double brute_objective(const TourCatalog& cat) {
  std::vector<std::vector<int>> rows;
  for (const auto& s : cat.sets) {
    std::vector<int> r;
    for (const int v : s) {
      r.push_back(static_cast<int>(
          std::lower_bound(cat.cover.begin(), cat.cover.end(), v) - cat.cover.begin()));
    }
    rows.push_back(r);
  }
  return ref::brute_covering_lp(rows, cat.costs, static_cast<int>(cat.cover.size()));
}

} // namespace

TEST(Catalog, Line3Lp1) {
  const auto cat = enumerate_tours(line3(), LpVariant::lp1);
  const std::vector<CustomerSet> sets{{1}, {1, 2}, {1, 3}, {2}, {2, 3}, {3}};
  EXPECT_EQ(cat.sets, sets);
  EXPECT_EQ(cat.costs, (std::vector<double>{2, 4, 6, 4, 6, 6}));
  EXPECT_EQ(cat.cover, (CustomerSet{1, 2, 3}));
  EXPECT_TRUE(cat.exact_pricing);
}

TEST(Catalog, Line3Lp2SameTours) {
  const auto a = enumerate_tours(line3(), LpVariant::lp1);
  const auto b = enumerate_tours(line3(), LpVariant::lp2, Rational(1, 3));
  EXPECT_EQ(a.sets, b.sets);
  EXPECT_EQ(a.costs, b.costs);
}

TEST(Catalog, CapacityExcludesPairs) {
  const auto inst = ref::line_instance({1, 2}, {2, 2}, 2);
  const auto cat = enumerate_tours(inst, LpVariant::lp1);
  EXPECT_EQ(cat.sets, (std::vector<CustomerSet>{{1}, {2}}));
}

TEST(Catalog, Lp2DropsSmallCustomers) {
  const auto inst = ref::line_instance({1, 2, 3}, {1, 3, 4}, 10);
  const auto cat = enumerate_tours(inst, LpVariant::lp2, Rational(1, 5));
  EXPECT_EQ(cat.cover, (CustomerSet{2, 3}));
  EXPECT_EQ(cat.sets, (std::vector<CustomerSet>{{2}, {2, 3}, {3}}));
}

TEST(Catalog, SizeCap) {
  const auto inst = gen_instance(MetricKind::euclidean, 12, 12, DemandLaw::uniform, 1);
  EXPECT_THROW(enumerate_tours(inst, LpVariant::lp1, Rational(0), 50), CatalogTooLarge);
}

TEST(CoveringLp, Line3ObjectiveAndDualCertificate) {
  const auto cat = enumerate_tours(line3(), LpVariant::lp1);
  const auto lp = solve_covering_lp(cat);
  EXPECT_TRUE(lp.certified);
  EXPECT_NEAR(lp.objective, 8.0, 1e-9);
  EXPECT_NEAR(lp.dual_objective, 8.0, 1e-9);
  ASSERT_EQ(lp.duals.size(), 3u);
  EXPECT_NEAR(lp.duals[0], 2.0, 1e-9);
  EXPECT_NEAR(lp.duals[1], 2.0, 1e-9);
  EXPECT_NEAR(lp.duals[2], 4.0, 1e-9);
  EXPECT_NEAR(brute_objective(cat), 8.0, 1e-9);
}

TEST(CoveringLp, SingleTourCoveringEverything) {
  const auto cat = manual_catalog({1, 2, 3}, {{1, 2, 3}}, {7.5});
  const auto lp = solve_covering_lp(cat);
  EXPECT_NEAR(lp.objective, 7.5, 1e-12);
  EXPECT_NEAR(lp.x[0], 1.0, 1e-12);
}

TEST(CoveringLp, UncoverableRowFails) {
  const auto cat = manual_catalog({1, 2}, {{1}}, {1.0});
  EXPECT_THROW(solve_covering_lp(cat), LpFailure);
}

TEST(CoveringLp, EmptyCover) {
  const auto lp = solve_covering_lp(manual_catalog({}, {}, {}));
  EXPECT_EQ(lp.objective, 0.0);
  EXPECT_TRUE(lp.certified);
}

TEST(CoveringLp, MatchesVertexEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = gen_instance(seed % 2 ? MetricKind::random_metric
                                            : MetricKind::euclidean,
                                   3 + static_cast<int>(seed % 2), 2 + seed % 3,
                                   DemandLaw::uniform, seed);
    const auto cat = enumerate_tours(inst, LpVariant::lp1);
    const auto lp = solve_covering_lp(cat);
    EXPECT_NEAR(lp.objective, brute_objective(cat), 1e-7) << seed;
    EXPECT_LE(lp.max_coverage_violation, 1e-9);
  }
}

TEST(CoveringLp, CertifiedOnLargerCatalogs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_instance(MetricKind::euclidean, 10, 4, DemandLaw::uniform,
                                   seed);
    const auto lp = solve_covering_lp(enumerate_tours(inst, LpVariant::lp1));
    EXPECT_TRUE(lp.certified);
    EXPECT_NEAR(lp.objective, lp.dual_objective, 1e-6 * lp.objective);
  }
}

TEST(Rounding, GammaZeroSelectsNothing) {
  const auto cat = enumerate_tours(line3(), LpVariant::lp1);
  const auto lp = solve_covering_lp(cat);
  const auto r = round_tours(cat, lp, 0.0, 3);
  EXPECT_TRUE(r.selected.empty());
  EXPECT_EQ(r.uncovered, cat.cover);
  EXPECT_EQ(r.cost, 0.0);
}

TEST(Rounding, UnitWeightAlwaysSelected) {
  const auto cat = manual_catalog({1, 2}, {{1}, {1, 2}, {2}}, {1, 3, 1});
  LpSolution lp;
  lp.x = {0.0, 1.0, 0.0};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = round_tours(cat, lp, 1.0, seed);
    EXPECT_EQ(r.selected, std::vector<std::size_t>{1});
    EXPECT_TRUE(r.uncovered.empty());
  }
}

TEST(Rounding, ReproducibleAndOrderIndependent) {
  const auto inst = gen_instance(MetricKind::euclidean, 7, 3, DemandLaw::uniform, 5);
  const auto cat = enumerate_tours(inst, LpVariant::lp1);
  const auto lp = solve_covering_lp(cat);
  auto shuffled = cat;
  LpSolution lp_shuffled = lp;
  SplitMix64 rng(77);
  std::vector<std::size_t> perm(cat.sets.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    perm[i] = i;
  }
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.next() % i]);
  }
  for (std::size_t i = 0; i < perm.size(); ++i) {
    shuffled.sets[i] = cat.sets[perm[i]];
    shuffled.costs[i] = cat.costs[perm[i]];
    shuffled.keys[i] = cat.keys[perm[i]];
    lp_shuffled.x[i] = lp.x[perm[i]];
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = round_tours(cat, lp, 1.5, seed);
    const auto b = round_tours(cat, lp, 1.5, seed);
    EXPECT_EQ(a.selected, b.selected);
    const auto c = round_tours(shuffled, lp_shuffled, 1.5, seed);
    std::vector<CustomerSet> sa, sc;
    for (const auto j : a.selected) {
      sa.push_back(cat.sets[j]);
    }
    for (const auto j : c.selected) {
      sc.push_back(shuffled.sets[j]);
    }
    std::sort(sc.begin(), sc.end());
    EXPECT_EQ(sa, sc);
    EXPECT_EQ(a.uncovered, c.uncovered);
    EXPECT_DOUBLE_EQ(a.cost, c.cost);
  }
}

TEST(Rounding, Line3MonteCarlo) {
  const auto cat = enumerate_tours(line3(), LpVariant::lp1);
  const auto lp = solve_covering_lp(cat);
  const int seeds = 10000;
  std::vector<int> uncovered(4, 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const auto r = round_tours(cat, lp, 1.0, static_cast<std::uint64_t>(s));
    for (const int v : r.uncovered) {
      ++uncovered[v];
    }
    sum += r.cost;
    sum_sq += r.cost * r.cost;
  }
  for (int v = 1; v <= 3; ++v) {
    EXPECT_LE(uncovered[v] / static_cast<double>(seeds), std::exp(-1.0) + 0.02) << v;
  }
  const double mean = sum / seeds;
  const double se = std::sqrt((sum_sq / seeds - mean * mean) / seeds);
  EXPECT_LE(mean, lp.objective + 3.0 * se);
}

TEST(Rounding, CatalogJson) {
  const auto cat = enumerate_tours(line3(), LpVariant::lp1);
  const auto lp = solve_covering_lp(cat);
  const auto doc = to_json(cat, &lp);
  EXPECT_EQ(doc["tours"].size(), 6u);
  EXPECT_NEAR(doc["objective"].get<double>(), 8.0, 1e-9);
}
