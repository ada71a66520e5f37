#pragma once

#include <vector>

#include <json.hpp>

#include "ucvrp/instance.hpp"
#include "ucvrp/solution.hpp"

namespace ucvrp {

inline constexpr int kOracleCap = 14;

struct OracleResult {
  double opt_cost = 0.0;
  std::vector<CustomerSet> groups; // each sorted; groups in order of their lowest id
  std::vector<double> group_costs;
  Solution solution;
};

// Exact unsplittable CVRP by dynamic programming over customer subsets:
// best[S] = min over demand-feasible T subset of S containing the lowest
// customer of S of tsp(T) + best[S \ T]. Throws InstanceTooLarge above
// `cap` customers.
OracleResult exact_cvrp(const Instance& inst, int cap = kOracleCap);

nlohmann::json to_json(const OracleResult& r);

} // namespace ucvrp
