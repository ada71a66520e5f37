#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ucvrp/matching.hpp"
#include "ucvrp/random.hpp"
#include "ucvrp/tsp.hpp"
#include "ucvrp/weighted_matching.hpp"

using namespace ucvrp;

namespace {

long long matched_weight(const std::vector<int>& mate,
                         const std::vector<WeightedEdge>& edges) {
  long long w = 0;
  for (const auto& e : edges) {
    if (mate[e.u] == e.v && mate[e.v] == e.u) {
      w += e.weight;
    }
  }
  return w;
}

Instance big_heavy_instance(std::uint64_t seed, int n) {
  SplitMix64 rng(seed);
  RawInstance raw;
  raw.capacity = 12;
  const auto base = gen_instance(seed % 2 ? MetricKind::random_metric
                                          : MetricKind::euclidean,
                                 n, 12, DemandLaw::uniform, seed);
  raw.matrix = base.matrix();
  for (int v = 0; v < n; ++v) {
    raw.demands.push_back(rng.uniform() < 0.8 ? 5 + static_cast<int>(rng.next() % 8)
                                              : 1 + static_cast<int>(rng.next() % 4));
  }
  return validate_instance(raw);
}

} // namespace

TEST(Blossom, MatchesBruteForceOnRandomGraphs) {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 9);
    std::vector<WeightedEdge> edges;
    std::vector<ref::BruteEdge> brute;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.uniform() < 0.6) {
          const auto w = static_cast<std::int64_t>(rng.next() % 40) - 5;
          edges.push_back({u, v, w});
          brute.push_back({u, v, w});
        }
      }
    }
    if (brute.size() > 22) {
      brute.resize(22);
      edges.resize(22);
    }
    const auto mate = max_weight_matching(n, edges);
    ASSERT_EQ(mate.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(matched_weight(mate, edges), ref::brute_matching_weight(n, brute))
        << "trial " << trial;
  }
}

TEST(Blossom, EmptyAndSingleEdge) {
  EXPECT_EQ(max_weight_matching(3, {}), (std::vector<int>{-1, -1, -1}));
  const auto mate = max_weight_matching(2, {{0, 1, 7}});
  EXPECT_EQ(mate, (std::vector<int>{1, 0}));
}

TEST(ServeBig, Line3) {
  const auto r = serve_big_by_matching(line3());
  EXPECT_EQ(r.plan.pairs, (std::vector<std::pair<int, int>>{{2, 3}}));
  EXPECT_EQ(r.plan.solos, std::vector<int>{1});
  EXPECT_EQ(r.plan.cost, 8.0);
  EXPECT_EQ(r.solution.cost, 8.0);
  const auto doc = to_json(r.plan);
  EXPECT_EQ(doc["cost"], 8.0);
}

TEST(ServeBig, NoBigCustomers) {
  const auto inst = ref::line_instance({1, 2, 3}, {1, 1, 1}, 3);
  const auto r = serve_big_by_matching(inst);
  EXPECT_TRUE(r.plan.pairs.empty());
  EXPECT_TRUE(r.plan.solos.empty());
  EXPECT_EQ(r.plan.cost, 0.0);
}

TEST(ServeBig, OversizedPairBecomesSolos) {
  const auto inst = ref::line_instance({1, 1}, {3, 3}, 5);
  const auto r = serve_big_by_matching(inst);
  EXPECT_TRUE(r.plan.pairs.empty());
  EXPECT_EQ(r.plan.solos, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.plan.cost, 4.0);
}

TEST(ServeBig, BlossomAgreesWithEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = big_heavy_instance(seed, 4 + static_cast<int>(seed % 9));
    const auto a = serve_big_by_blossom(inst);
    const auto b = serve_big_by_enumeration(inst);
    EXPECT_NEAR(a.plan.cost, b.plan.cost, 1e-9) << seed;
    EXPECT_TRUE(check_feasible(inst, a.solution, big_customers(inst)).ok());
    EXPECT_TRUE(check_feasible(inst, b.solution, big_customers(inst)).ok());
  }
}

TEST(ServeBig, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = big_heavy_instance(seed, 8);
    const int m = inst.vertex_count();
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 rng(seed + 9);
    for (int i = m - 1; i > 1; --i) {
      std::swap(perm[i], perm[1 + rng.next() % i]);
    }
    RawInstance raw;
    raw.capacity = inst.capacity();
    raw.demands.resize(inst.n());
    raw.matrix.resize(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
      if (i > 0) {
        raw.demands[perm[i] - 1] = inst.demand(i);
      }
      for (int j = 0; j < m; ++j) {
        raw.matrix[perm[i] * m + perm[j]] = inst.cost(i, j);
      }
    }
    EXPECT_NEAR(serve_big_by_matching(inst).plan.cost,
                serve_big_by_matching(validate_instance(raw)).plan.cost, 1e-9);
  }
}

TEST(Subalg1, Line3) {
  const auto inst = line3();
  const auto r = subalg1(inst, make_tour(inst, std::vector<int>{1, 2, 3}));
  EXPECT_EQ(r.solution.cost, 8.0);
  EXPECT_EQ(r.bound, 14.0);
  EXPECT_FALSE(r.trace.has_value());
}

TEST(Subalg1, OnlySmallIsPureItp) {
  const auto inst = ref::line_instance({1, 2, 3}, {1, 1, 1}, 3);
  const auto tour = make_tour(inst, std::vector<int>{1, 2, 3});
  const auto r = subalg1(inst, tour);
  const auto itp = delta_itp(inst, tour, Rational(1, 3));
  EXPECT_EQ(r.solution.cost, itp.solution.cost);
  EXPECT_EQ(r.plan.cost, 0.0);
}

TEST(Subalg1, MixedExample) {
  const auto inst = ref::line_instance({1, 2}, {1, 4}, 6);
  const auto r = subalg1(inst, make_tour(inst, std::vector<int>{1, 2}));
  EXPECT_EQ(r.plan.solos, std::vector<int>{2});
  EXPECT_EQ(r.plan.cost, 4.0);
  EXPECT_EQ(r.solution.cost, 6.0);
  EXPECT_LE(r.solution.cost, r.bound);
  EXPECT_TRUE(check_feasible(inst, r.solution).ok());
}

TEST(Subalg1, BoundOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto inst = gen_instance(seed % 2 ? MetricKind::random_metric
                                            : MetricKind::euclidean,
                                   3 + static_cast<int>(seed % 30),
                                   1 + static_cast<int>(seed % 10),
                                   seed % 3 ? DemandLaw::uniform : DemandLaw::heavy_tail,
                                   seed);
    const auto tour = best_available_tsp(inst, inst.customers());
    const auto r = subalg1(inst, tour);
    EXPECT_TRUE(check_feasible(inst, r.solution).ok()) << seed;
    EXPECT_LE(r.solution.cost, r.bound + 1e-9) << seed;
  }
}
