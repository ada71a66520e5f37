#include "ucvrp/tsp.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "ucvrp/errors.hpp"
#include "ucvrp/kernels.hpp"

namespace ucvrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense cost matrix over `ground` (positions 0..m-1).
std::vector<double> local_matrix(const Instance& inst,
                                 std::span<const int> ground) {
  const std::size_t m = ground.size();
  std::vector<double> local(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      local[a * m + b] = inst.cost(ground[a], ground[b]);
    }
  }
  return local;
}

// suffix[R * m + j]: cheapest path that starts at ground[j], visits every
// position in R (j not in R) and ends at the depot.
std::vector<double> suffix_table(const Instance& inst,
                                 std::span<const int> ground) {
  const std::size_t m = ground.size();
  const std::size_t subsets = std::size_t{1} << m;
  const auto local = local_matrix(inst, ground);
  const auto& k = kernels::active();
  std::vector<double> suffix(subsets * m, kInf);
  for (std::size_t j = 0; j < m; ++j) {
    suffix[j] = inst.cost(ground[j], kDepot);
  }
  for (std::size_t set = 1; set < subsets; ++set) {
    std::span<double> target(suffix.data() + set * m, m);
    for (std::size_t i = 0; i < m; ++i) {
      if ((set >> i & 1U) == 0) {
        continue;
      }
      const double tail = suffix[(set ^ (std::size_t{1} << i)) * m + i];
      k.relax_min(target, std::span<const double>(local.data() + i * m, m),
                  tail);
    }
  }
  return suffix;
}

void check_subset(const Instance& inst, std::span<const int> subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 1 || subset[i] > inst.n()) {
      throw std::invalid_argument("subset contains non-customer vertex " +
                                  std::to_string(subset[i]));
    }
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw std::invalid_argument("subset must be sorted and duplicate-free");
    }
  }
}

} // namespace

std::string_view to_string(TourQuality q) {
  switch (q) {
  case TourQuality::exact:
    return "exact";
  case TourQuality::two_approx:
    return "two_approx";
  case TourQuality::external:
    break;
  }
  return "external";
}

double walk_cost(const Instance& inst, std::span<const int> walk) {
  double sum = 0.0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    sum += inst.cost(walk[i - 1], walk[i]);
  }
  return sum;
}

Tour make_tour(const Instance& inst, std::span<const int> order,
               TourQuality quality) {
  Tour t;
  t.quality = quality;
  if (order.empty()) {
    return t;
  }
  t.vertices.reserve(order.size() + 2);
  t.vertices.push_back(kDepot);
  t.vertices.insert(t.vertices.end(), order.begin(), order.end());
  t.vertices.push_back(kDepot);
  t.cost = walk_cost(inst, t.vertices);
  return t;
}

std::size_t heldkarp_cap() {
  if (const char* env = std::getenv("UCVRP_HELDKARP_CAP")) {
    try {
      const long v = std::stol(env);
      if (v > 0 && v <= 26) {
        return static_cast<std::size_t>(v);
      }
    } catch (const std::exception&) {
    }
  }
  return 18;
}

Tour exact_tsp(const Instance& inst, std::span<const int> subset,
               std::optional<std::size_t> cap) {
  check_subset(inst, subset);
  const std::size_t limit = cap.value_or(heldkarp_cap());
  const std::size_t m = subset.size();
  if (m > limit) {
    throw SubsetTooLarge(m, limit);
  }
  if (m == 0) {
    return Tour{{}, 0.0, TourQuality::exact};
  }
  const auto suffix = suffix_table(inst, subset);
  const std::size_t full = (std::size_t{1} << m) - 1;

  double best = kInf;
  for (std::size_t j = 0; j < m; ++j) {
    best = std::min(best, inst.cost(kDepot, subset[j]) +
                              suffix[(full ^ (std::size_t{1} << j)) * m + j]);
  }
  // Walk forward taking the smallest-id vertex that stays on an optimal
  // completion; this yields the lexicographically smallest optimal tour.
  const double tol = 1e-9 * std::max(1.0, best);
  std::vector<int> order;
  order.reserve(m);
  std::size_t remaining = full;
  int current = kDepot;
  double target = best;
  while (remaining != 0) {
    for (std::size_t j = 0; j < m; ++j) {
      if ((remaining >> j & 1U) == 0) {
        continue;
      }
      const std::size_t rest = remaining ^ (std::size_t{1} << j);
      const double tail = suffix[rest * m + j];
      if (inst.cost(current, subset[j]) + tail <= target + tol) {
        order.push_back(subset[j]);
        current = subset[j];
        remaining = rest;
        target = tail;
        break;
      }
    }
  }
  return make_tour(inst, order, TourQuality::exact);
}

std::vector<double> subset_tour_costs(const Instance& inst,
                                      std::span<const int> ground,
                                      std::optional<std::size_t> cap) {
  check_subset(inst, ground);
  const std::size_t limit = cap.value_or(heldkarp_cap());
  const std::size_t m = ground.size();
  if (m > limit) {
    throw SubsetTooLarge(m, limit);
  }
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<double> costs(subsets, 0.0);
  if (m == 0) {
    return costs;
  }
  const auto suffix = suffix_table(inst, ground);
  for (std::size_t set = 1; set < subsets; ++set) {
    double best = kInf;
    for (std::size_t j = 0; j < m; ++j) {
      if ((set >> j & 1U) != 0) {
        best = std::min(best, inst.cost(kDepot, ground[j]) +
                                  suffix[(set ^ (std::size_t{1} << j)) * m + j]);
      }
    }
    costs[set] = best;
  }
  return costs;
}

Tour approx_tsp(const Instance& inst, std::span<const int> subset) {
  check_subset(inst, subset);
  if (subset.empty()) {
    throw std::invalid_argument("approx_tsp needs a non-empty subset");
  }
  // Local vertex 0 is the depot, 1..m the subset.
  std::vector<int> ground{kDepot};
  ground.insert(ground.end(), subset.begin(), subset.end());
  const std::size_t m = ground.size();
  const auto local = local_matrix(inst, ground);
  const auto& k = kernels::active();

  std::vector<double> key(local.begin(), local.begin() + m);
  std::vector<std::int32_t> parent(m, 0);
  key[0] = -kInf;
  std::vector<std::vector<int>> children(m);
  for (std::size_t added = 1; added < m; ++added) {
    const auto u = static_cast<std::size_t>(k.argmin(key));
    key[u] = -kInf;
    children[parent[u]].push_back(static_cast<int>(u));
    k.relax_min_arg(key, parent,
                    std::span<const double>(local.data() + u * m, m),
                    static_cast<std::int32_t>(u));
  }

  std::vector<int> order;
  order.reserve(m - 1);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u != 0) {
      order.push_back(ground[u]);
    }
    auto& ch = children[u];
    std::sort(ch.begin(), ch.end());
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return make_tour(inst, order, TourQuality::two_approx);
}

Tour best_available_tsp(const Instance& inst, std::span<const int> subset) {
  if (subset.size() <= heldkarp_cap()) {
    return exact_tsp(inst, subset);
  }
  return approx_tsp(inst, subset);
}

Tour shortcut(const Instance& inst, std::span<const int> walk,
              std::span<const int> keep) {
  if (!walk.empty() &&
      (walk.size() < 2 || walk.front() != kDepot || walk.back() != kDepot)) {
    throw std::invalid_argument("walk must start and end at the depot");
  }
  std::vector<char> wanted(inst.vertex_count(), 0);
  for (const int v : keep) {
    if (v != kDepot) {
      wanted[v] = 1;
    }
  }
  std::vector<char> seen(inst.vertex_count(), 0);
  std::vector<int> order;
  for (const int v : walk) {
    if (v != kDepot && wanted[v] && !seen[v]) {
      seen[v] = 1;
      order.push_back(v);
    }
  }
  for (const int v : keep) {
    if (v != kDepot && !seen[v]) {
      throw KeepNotVisited(v);
    }
  }
  return make_tour(inst, order, TourQuality::external);
}

Tour shortcut(const Instance& inst, const Tour& tour,
              std::span<const int> keep) {
  return shortcut(inst, tour.vertices, keep);
}

} // namespace ucvrp
