#pragma once

#include <cstdint>
#include <vector>

namespace ucvrp {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

// Maximum-weight (not necessarily maximum-cardinality) matching in a
// general graph, Edmonds' blossom method with primal-dual updates in
// O(V^3). Weights must be integers of magnitude below 2^60. Returns mate[v]
// (-1 when unmatched).
std::vector<int> max_weight_matching(int vertex_count,
                                     const std::vector<WeightedEdge>& edges);

} // namespace ucvrp
