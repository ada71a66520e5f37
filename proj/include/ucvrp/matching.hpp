#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ucvrp/instance.hpp"
#include "ucvrp/itp.hpp"
#include "ucvrp/solution.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

// Pair/solo cover of the customers with normalised demand above 1/3.
struct MatchingPlan {
  std::vector<std::pair<int, int>> pairs; // u < v, sorted
  std::vector<int> solos;                 // sorted
  double cost = 0.0;
};

nlohmann::json to_json(const MatchingPlan& plan);

struct MatchingResult {
  MatchingPlan plan;
  Solution solution;
};

// Customers with d_v / k > 1/3, sorted.
CustomerSet big_customers(const Instance& inst);

// Cheapest cover of the customers above 1/3 by trivial tours (r,v,r) and
// pair tours (r,u,v,r) with d_u + d_v <= k. Computed as a maximum-weight
// matching on the savings c(r,u) + c(r,v) - c(u,v); with at most
// `enumeration_cap` such customers an exhaustive subset recursion is used
// instead, which is exact in floating point.
MatchingResult serve_big_by_matching(const Instance& inst,
                                     int enumeration_cap = 12);

// The two engines, exposed for cross-checking.
MatchingResult serve_big_by_blossom(const Instance& inst);
MatchingResult serve_big_by_enumeration(const Instance& inst);

struct Subalg1Result {
  Solution solution;
  MatchingPlan plan;
  std::optional<PartitionTrace> trace; // absent when nobody is at most 1/3
  // c(tour) + (3/2) sum_{d <= 1/3} 2 d c(r,v) + matching cost
  double bound = 0.0;
};

// Matching for customers above 1/3, then 1/3-ITP along the shortcut of
// `tour` (which must visit every customer) for the rest.
Subalg1Result subalg1(const Instance& inst, const Tour& tour);

} // namespace ucvrp
