#include "ucvrp/matching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucvrp/errors.hpp"
#include "ucvrp/weighted_matching.hpp"

namespace ucvrp {

namespace {

bool pair_fits(const Instance& inst, int u, int v) {
  return inst.demand(u) + inst.demand(v) <= inst.capacity();
}

double pair_cost(const Instance& inst, int u, int v) {
  return inst.cost(kDepot, u) + inst.cost(u, v) + inst.cost(v, kDepot);
}

MatchingResult finish(const Instance& inst, MatchingPlan plan) {
  std::sort(plan.pairs.begin(), plan.pairs.end());
  std::sort(plan.solos.begin(), plan.solos.end());
  MatchingResult out;
  for (const auto& [u, v] : plan.pairs) {
    const int order[] = {u, v};
    out.solution.add(make_tour(inst, order, TourQuality::exact), {u, v});
  }
  for (const int v : plan.solos) {
    Tour t = trivial_tour(inst, v);
    t.quality = TourQuality::exact;
    out.solution.add(std::move(t), {v});
  }
  plan.cost = out.solution.cost;
  out.plan = std::move(plan);
  return out;
}

} // namespace

nlohmann::json to_json(const MatchingPlan& plan) {
  nlohmann::json doc;
  auto& pairs = doc["pairs"] = nlohmann::json::array();
  for (const auto& [u, v] : plan.pairs) {
    pairs.push_back({u, v});
  }
  doc["solos"] = plan.solos;
  doc["cost"] = plan.cost;
  return doc;
}

CustomerSet big_customers(const Instance& inst) {
  const Rational third(1, 3);
  CustomerSet out;
  for (int v = 1; v <= inst.n(); ++v) {
    if (inst.norm_demand(v) > third) {
      out.push_back(v);
    }
  }
  return out;
}

MatchingResult serve_big_by_enumeration(const Instance& inst) {
  const CustomerSet big = big_customers(inst);
  const auto m = static_cast<int>(big.size());
  if (m > 24) {
    throw SubsetTooLarge(big.size(), 24);
  }
  const std::size_t full = (std::size_t{1} << m) - 1;
  // best[mask]: cheapest cover of the customers in mask. The lowest
  // member is either a solo or paired with a later member.
  std::vector<double> best(full + 1, 0.0);
  std::vector<int> partner(full + 1, -1);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const int i = std::countr_zero(mask);
    const std::size_t rest = mask & (mask - 1);
    double value = 2.0 * inst.cost(kDepot, big[i]) + best[rest];
    int choice = -1;
    for (std::size_t r = rest; r != 0; r &= r - 1) {
      const int j = std::countr_zero(r);
      if (!pair_fits(inst, big[i], big[j])) {
        continue;
      }
      const double c =
          pair_cost(inst, big[i], big[j]) + best[rest & ~(std::size_t{1} << j)];
      if (c < value) {
        value = c;
        choice = j;
      }
    }
    best[mask] = value;
    partner[mask] = choice;
  }
  MatchingPlan plan;
  for (std::size_t mask = full; mask != 0;) {
    const int i = std::countr_zero(mask);
    const int j = partner[mask];
    mask &= mask - 1;
    if (j < 0) {
      plan.solos.push_back(big[i]);
    } else {
      plan.pairs.emplace_back(big[i], big[j]);
      mask &= ~(std::size_t{1} << j);
    }
  }
  return finish(inst, std::move(plan));
}

MatchingResult serve_big_by_blossom(const Instance& inst) {
  const CustomerSet big = big_customers(inst);
  const auto m = static_cast<int>(big.size());
  double max_saving = 0.0;
  std::vector<std::pair<std::pair<int, int>, double>> savings;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (!pair_fits(inst, big[a], big[b])) {
        continue;
      }
      // Pairing saves this much over two trivial tours (>= 0 on a metric).
      const double s = 2.0 * inst.cost(kDepot, big[a]) +
                       2.0 * inst.cost(kDepot, big[b]) -
                       pair_cost(inst, big[a], big[b]);
      if (s > 0.0) {
        savings.push_back({{a, b}, s});
        max_saving = std::max(max_saving, s);
      }
    }
  }
  std::vector<WeightedEdge> edges;
  if (max_saving > 0.0) {
    // Integer weights with ~40 significant bits.
    const int exp = std::ilogb(max_saving);
    const double scale = std::ldexp(1.0, 40 - exp);
    for (const auto& [ab, s] : savings) {
      const auto w = static_cast<std::int64_t>(std::llround(s * scale));
      if (w > 0) {
        edges.push_back({ab.first, ab.second, w});
      }
    }
  }
  const auto mate = max_weight_matching(m, edges);
  MatchingPlan plan;
  for (int a = 0; a < m; ++a) {
    if (mate[a] < 0) {
      plan.solos.push_back(big[a]);
    } else if (mate[a] > a) {
      plan.pairs.emplace_back(big[a], big[mate[a]]);
    }
  }
  return finish(inst, std::move(plan));
}

MatchingResult serve_big_by_matching(const Instance& inst,
                                     int enumeration_cap) {
  if (static_cast<int>(big_customers(inst).size()) <= enumeration_cap) {
    return serve_big_by_enumeration(inst);
  }
  return serve_big_by_blossom(inst);
}

Subalg1Result subalg1(const Instance& inst, const Tour& tour) {
  const Rational third(1, 3);
  std::vector<int> on_tour(tour.customers().begin(), tour.customers().end());
  std::sort(on_tour.begin(), on_tour.end());
  if (on_tour != inst.customers()) {
    throw std::invalid_argument("subalg1: tour must visit every customer");
  }
  Subalg1Result out;
  auto matched = serve_big_by_matching(inst);
  out.plan = matched.plan;
  out.solution = std::move(matched.solution);
  CustomerSet rest;
  for (int v = 1; v <= inst.n(); ++v) {
    if (inst.norm_demand(v) <= third) {
      rest.push_back(v);
    }
  }
  if (!rest.empty()) {
    const Tour sub = shortcut(inst, tour, rest);
    auto part = delta_itp(inst, sub, third);
    out.solution.append(part.solution);
    out.trace = std::move(part.trace);
  }
  out.bound = tour.cost + 1.5 * radial_mass(inst, rest) + out.plan.cost;
  return out;
}

} // namespace ucvrp
