#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ucvrp/instance.hpp"

namespace ucvrp {

// How a tour was produced; the ratio analysis reads alpha off this tag
// (exact: 1, two_approx: 2, external: unknown).
enum class TourQuality { exact, two_approx, external };

std::string_view to_string(TourQuality q);

// Closed walk (depot, v1, ..., vl, depot) over distinct customers. The
// empty tour has no vertices and cost 0.
struct Tour {
  std::vector<int> vertices;
  double cost = 0.0;
  TourQuality quality = TourQuality::external;

  [[nodiscard]] bool empty() const { return vertices.size() <= 2; }
  // Interior vertices in visiting order.
  [[nodiscard]] std::span<const int> customers() const {
    if (vertices.size() <= 2) {
      return {};
    }
    return std::span<const int>(vertices).subspan(1, vertices.size() - 2);
  }
};

double walk_cost(const Instance& inst, std::span<const int> walk);

// Builds a depot-rooted tour visiting `order` and computes its cost.
Tour make_tour(const Instance& inst, std::span<const int> order,
               TourQuality quality = TourQuality::external);

// Cap on exact-TSP subset size: UCVRP_HELDKARP_CAP if set, otherwise 18.
std::size_t heldkarp_cap();

// Optimal tour through the depot and `subset` (Held-Karp). Among optimal
// tours the lexicographically smallest vertex sequence is returned.
// Throws SubsetTooLarge above the cap.
Tour exact_tsp(const Instance& inst, std::span<const int> subset,
               std::optional<std::size_t> cap = std::nullopt);

// Optimal tour cost for every subset of `ground` at once, indexed by the
// bitmask over positions in `ground`. Entry 0 is 0.
std::vector<double> subset_tour_costs(const Instance& inst,
                                      std::span<const int> ground,
                                      std::optional<std::size_t> cap = std::nullopt);

// Minimum-spanning-tree doubling with shortcutting: a preorder walk of the
// MST rooted at the depot, children visited in increasing vertex id.
// Cost is at most twice the optimum on metric instances.
Tour approx_tsp(const Instance& inst, std::span<const int> subset);

// exact_tsp when the subset fits under the cap, approx_tsp otherwise.
Tour best_available_tsp(const Instance& inst, std::span<const int> subset);

// Keeps the vertices of `keep` in first-appearance order along `walk`.
// The walk must start and end at the depot. Throws KeepNotVisited when a
// kept vertex does not occur on the walk.
Tour shortcut(const Instance& inst, std::span<const int> walk,
              std::span<const int> keep);
Tour shortcut(const Instance& inst, const Tour& tour,
              std::span<const int> keep);

} // namespace ucvrp
