#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucvrp/instance.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

// A set of tours with an unsplittable assignment: served[t] lists the
// customers whose whole demand tour t delivers. A tour may visit customers
// it does not serve (rounded LP tours overlapping other selected tours).
struct Solution {
  std::vector<Tour> tours;
  std::vector<std::vector<int>> served;
  double cost = 0.0;

  void add(Tour tour, std::vector<int> customers);
  void append(const Solution& other);
  // Tour index serving each vertex (size n+1, -1 where none).
  [[nodiscard]] std::vector<int> assignment(int n) const;
};

// Trivial tour (r, v, r) serving v.
Tour trivial_tour(const Instance& inst, int v);

enum class Violation {
  none,
  capacity_exceeded,
  customer_unserved,
  customer_multiply_served,
  served_off_tour,
  cost_mismatch,
};

std::string_view to_string(Violation v);

struct FeasibilityReport {
  Violation violation = Violation::none;
  int vertex = -1;
  int tour = -1;

  [[nodiscard]] bool ok() const { return violation == Violation::none; }
  [[nodiscard]] std::string describe() const;
};

// Checks the unsplittable routing conditions: per-tour served demand at
// most k, every served customer lies on its tour, every customer in
// `required` (all customers when omitted) is served exactly once, and the
// stored cost matches the tours within 1e-9 (relative for large costs).
// Reports the first violation found (tours in order, then customers).
FeasibilityReport check_feasible(const Instance& inst, const Solution& sol,
                                 std::optional<std::span<const int>> required =
                                     std::nullopt);

} // namespace ucvrp
