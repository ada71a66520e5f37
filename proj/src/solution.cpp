#include "ucvrp/solution.hpp"

#include <algorithm>
#include <cmath>

namespace ucvrp {

void Solution::add(Tour tour, std::vector<int> customers) {
  cost += tour.cost;
  tours.push_back(std::move(tour));
  served.push_back(std::move(customers));
}

void Solution::append(const Solution& other) {
  for (std::size_t t = 0; t < other.tours.size(); ++t) {
    add(other.tours[t], other.served[t]);
  }
}

std::vector<int> Solution::assignment(int n) const {
  std::vector<int> out(n + 1, -1);
  for (std::size_t t = 0; t < served.size(); ++t) {
    for (const int v : served[t]) {
      out[v] = static_cast<int>(t);
    }
  }
  return out;
}

Tour trivial_tour(const Instance& inst, int v) {
  const int order[] = {v};
  return make_tour(inst, order, TourQuality::external);
}

std::string_view to_string(Violation v) {
  switch (v) {
  case Violation::none:
    return "none";
  case Violation::capacity_exceeded:
    return "CapacityExceeded";
  case Violation::customer_unserved:
    return "CustomerUnserved";
  case Violation::customer_multiply_served:
    return "CustomerMultiplyServed";
  case Violation::served_off_tour:
    return "ServedOffTour";
  case Violation::cost_mismatch:
    return "CostMismatch";
  }
  return "unknown";
}

std::string FeasibilityReport::describe() const {
  if (ok()) {
    return "feasible";
  }
  std::string s(to_string(violation));
  if (vertex >= 0) {
    s += " customer=" + std::to_string(vertex);
  }
  if (tour >= 0) {
    s += " tour=" + std::to_string(tour);
  }
  return s;
}

FeasibilityReport check_feasible(const Instance& inst, const Solution& sol,
                                 std::optional<std::span<const int>> required) {
  const int n = inst.n();
  if (sol.served.size() != sol.tours.size()) {
    return {Violation::served_off_tour, -1,
            static_cast<int>(std::min(sol.served.size(), sol.tours.size()))};
  }
  std::vector<int> times_served(n + 1, 0);
  double total = 0.0;
  for (std::size_t t = 0; t < sol.tours.size(); ++t) {
    const auto& tour = sol.tours[t];
    total += walk_cost(inst, tour.vertices);
    const auto on_tour = tour.customers();
    long long load = 0;
    for (const int v : sol.served[t]) {
      if (v < 1 || v > n ||
          std::find(on_tour.begin(), on_tour.end(), v) == on_tour.end()) {
        return {Violation::served_off_tour, v, static_cast<int>(t)};
      }
      load += inst.demand(v);
      ++times_served[v];
    }
    if (load > inst.capacity()) {
      return {Violation::capacity_exceeded, -1, static_cast<int>(t)};
    }
  }
  const auto check_customer = [&](int v) -> FeasibilityReport {
    if (times_served[v] == 0) {
      return {Violation::customer_unserved, v, -1};
    }
    if (times_served[v] > 1) {
      return {Violation::customer_multiply_served, v, -1};
    }
    return {};
  };
  if (required) {
    for (const int v : *required) {
      if (auto r = check_customer(v); !r.ok()) {
        return r;
      }
    }
    for (int v = 1; v <= n; ++v) {
      if (times_served[v] > 1) {
        return {Violation::customer_multiply_served, v, -1};
      }
    }
  } else {
    for (int v = 1; v <= n; ++v) {
      if (auto r = check_customer(v); !r.ok()) {
        return r;
      }
    }
  }
  if (std::abs(total - sol.cost) > 1e-9 * std::max(1.0, std::abs(total))) {
    return {Violation::cost_mismatch, -1, -1};
  }
  return {};
}

} // namespace ucvrp
