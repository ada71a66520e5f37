#include "ucvrp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "ucvrp/errors.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

OracleResult exact_cvrp(const Instance& inst, int cap) {
  const int n = inst.n();
  if (n > cap) {
    throw InstanceTooLarge(n, cap);
  }
  const CustomerSet all = inst.customers();
  const auto tsp = subset_tour_costs(inst, all, static_cast<std::size_t>(std::max(n, 1)));
  const std::size_t full = (std::size_t{1} << n) - 1;

  std::vector<int> load(full + 1, 0);
  for (std::size_t s = 1; s <= full; ++s) {
    const int i = std::countr_zero(s);
    load[s] = load[s & (s - 1)] + inst.demand(all[i]);
  }

  std::vector<double> best(full + 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> choice(full + 1, 0);
  best[0] = 0.0;
  for (std::size_t s = 1; s <= full; ++s) {
    const std::size_t low = s & (~s + 1);
    const std::size_t rest = s ^ low;
    // Submasks of rest, each joined with the anchor bit.
    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
      const std::size_t t = sub | low;
      if (load[t] <= inst.capacity()) {
        const double c = tsp[t] + best[s ^ t];
        if (c < best[s] - 1e-12 ||
            (c <= best[s] + 1e-12 && t < choice[s])) {
          if (c < best[s]) {
            best[s] = c;
          }
          choice[s] = t;
        }
      }
      if (sub == 0) {
        break;
      }
    }
  }

  OracleResult out;
  for (std::size_t s = full; s != 0;) {
    const std::size_t t = choice[s];
    CustomerSet group;
    for (std::size_t b = t; b != 0; b &= b - 1) {
      group.push_back(all[std::countr_zero(b)]);
    }
    Tour tour = exact_tsp(inst, group, group.size());
    out.group_costs.push_back(tour.cost);
    out.solution.add(std::move(tour), group);
    out.groups.push_back(std::move(group));
    s ^= t;
  }
  out.opt_cost = out.solution.cost;
  return out;
}

nlohmann::json to_json(const OracleResult& r) {
  return {{"opt_cost", r.opt_cost},
          {"groups", r.groups},
          {"group_costs", r.group_costs}};
}

} // namespace ucvrp
