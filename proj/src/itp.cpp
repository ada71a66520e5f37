#include "ucvrp/itp.hpp"

#include <algorithm>
#include <limits>
#include <list>
#include <stdexcept>

#include "ucvrp/errors.hpp"

namespace ucvrp {

namespace {

// Positions on the demand line are integers in units of 1/(2 k q) where
// delta = p/q, so customer intervals, breakpoint spacing, delta and every
// midpoint between critical offsets are exact.
using Pos = wide_int;

struct Layout {
  Pos scale = 1;    // units per normalised demand (2 k q)
  Pos spacing = 1;  // 1 - delta
  Pos threshold = 0; // delta
  std::vector<int> customers;
  std::vector<Pos> demand;
  std::vector<Pos> prefix; // size m + 1
};

Layout make_layout(const Instance& inst, const Tour& tour,
                   const Rational& delta) {
  if (delta < Rational(0) || delta >= Rational(1, 2)) {
    throw std::invalid_argument("delta must lie in [0, 1/2), got " +
                                delta.str());
  }
  Layout lay;
  const Pos k = inst.capacity();
  const Pos p = delta.num();
  const Pos q = delta.den();
  lay.scale = 2 * k * q;
  lay.spacing = 2 * k * (q - p);
  lay.threshold = 2 * k * p;
  const auto order = tour.customers();
  lay.customers.assign(order.begin(), order.end());
  lay.prefix.push_back(0);
  for (const int v : lay.customers) {
    if (v < 1 || v > inst.n()) {
      throw std::invalid_argument("tour visits a non-customer vertex");
    }
    if (inst.demand(v) > inst.capacity()) {
      throw DemandExceedsCapacity(v);
    }
    const Pos a = static_cast<Pos>(inst.demand(v)) * 2 * q;
    lay.demand.push_back(a);
    lay.prefix.push_back(lay.prefix.back() + a);
  }
  return lay;
}

Rational to_rational(Pos value, Pos scale) {
  return Rational::from_wide(value, scale);
}

Pos floor_mod(Pos x, Pos m) {
  const Pos r = x % m;
  return r < 0 ? r + m : r;
}

struct Unit {
  std::vector<int> members; // indices into layout.customers
  Pos load = 0;
  bool trivial = false;
  Pos left_part = 0;  // portion of a trivial customer left of its first cut
  Pos right_part = 0; // portion right of its last cut
};

struct Plan {
  std::vector<Unit> units;
  std::vector<Disposition> dispositions;
  std::vector<Pos> breakpoints;
};

Plan partition(const Layout& lay, Pos offset) {
  const std::size_t m = lay.customers.size();
  const Pos total = lay.prefix.back();
  const Pos cap = lay.scale;
  Plan plan;
  plan.dispositions.assign(m, Disposition::in_segment);

  for (Pos b = offset; b < total; b += lay.spacing) {
    if (b > 0) {
      plan.breakpoints.push_back(b);
    }
  }

  Unit current;
  const auto close = [&] {
    if (!current.members.empty()) {
      plan.units.push_back(std::move(current));
    }
    current = Unit{};
  };

  std::size_t next = 0; // index into plan.breakpoints
  for (std::size_t i = 0; i < m; ++i) {
    const Pos lo = lay.prefix[i];
    const Pos hi = lay.prefix[i + 1];
    // A breakpoint on an interval boundary is a clean cut.
    while (next < plan.breakpoints.size() && plan.breakpoints[next] <= lo) {
      close();
      ++next;
    }
    std::size_t cuts = 0;
    Pos first = 0;
    Pos last = 0;
    while (next < plan.breakpoints.size() && plan.breakpoints[next] < hi) {
      if (cuts == 0) {
        first = plan.breakpoints[next];
      }
      last = plan.breakpoints[next];
      ++cuts;
      ++next;
    }
    const auto idx = static_cast<int>(i);
    if (cuts == 0) {
      current.members.push_back(idx);
      current.load += lay.demand[i];
      continue;
    }
    if (cuts == 1 && current.load + lay.demand[i] <= cap) {
      current.members.push_back(idx);
      current.load += lay.demand[i];
      plan.dispositions[i] = Disposition::absorbed_left;
      close();
      continue;
    }
    close();
    Unit solo;
    solo.members.push_back(idx);
    solo.load = lay.demand[i];
    solo.trivial = true;
    solo.left_part = first - lo;
    solo.right_part = hi - last;
    plan.units.push_back(std::move(solo));
    plan.dispositions[i] = Disposition::trivial_tour;
  }
  close();

  // Merge trivial customers into a neighbouring segment when capacity
  // allows. Inserting v at a segment end costs at most 2 c(r, v), so this
  // never increases the total.
  for (std::size_t u = 0; u < plan.units.size();) {
    if (!plan.units[u].trivial) {
      ++u;
      continue;
    }
    const Unit& solo = plan.units[u];
    const int member = solo.members.front();
    const bool has_left = u > 0 && !plan.units[u - 1].trivial;
    const bool has_right =
        u + 1 < plan.units.size() && !plan.units[u + 1].trivial;
    const bool left_fits =
        has_left && plan.units[u - 1].load + solo.load <= cap;
    const bool right_fits =
        has_right && plan.units[u + 1].load + solo.load <= cap;
    const bool prefer_left = solo.left_part >= solo.right_part;
    if (left_fits && (prefer_left || !right_fits)) {
      plan.units[u - 1].members.push_back(member);
      plan.units[u - 1].load += solo.load;
      plan.dispositions[member] = Disposition::absorbed_left;
      plan.units.erase(plan.units.begin() + static_cast<std::ptrdiff_t>(u));
      continue;
    }
    if (right_fits) {
      auto& right = plan.units[u + 1];
      right.members.insert(right.members.begin(), member);
      right.load += solo.load;
      plan.dispositions[member] = Disposition::absorbed_right;
      plan.units.erase(plan.units.begin() + static_cast<std::ptrdiff_t>(u));
      continue;
    }
    ++u;
  }
  return plan;
}

ItpResult materialize(const Instance& inst, const Layout& lay,
                      const Rational& delta, Pos offset, const Plan& plan) {
  ItpResult out;
  auto& trace = out.trace;
  trace.delta = delta;
  trace.offset = to_rational(offset, lay.scale);
  for (const Pos b : plan.breakpoints) {
    trace.breakpoints.push_back(to_rational(b, lay.scale));
  }
  trace.customers = lay.customers;
  trace.dispositions = plan.dispositions;
  for (const auto& unit : plan.units) {
    std::vector<int> vertices;
    vertices.reserve(unit.members.size());
    for (const int idx : unit.members) {
      vertices.push_back(lay.customers[idx]);
    }
    if (!unit.trivial) {
      trace.segments.push_back(vertices);
    }
    Tour t = make_tour(inst, vertices);
    std::sort(vertices.begin(), vertices.end());
    out.solution.add(std::move(t), std::move(vertices));
  }
  trace.cost = out.solution.cost;
  return out;
}

double plan_cost(const Instance& inst, const Layout& lay, const Plan& plan) {
  double total = 0.0;
  for (const auto& unit : plan.units) {
    int prev = kDepot;
    for (const int idx : unit.members) {
      const int v = lay.customers[idx];
      total += inst.cost(prev, v);
      prev = v;
    }
    total += inst.cost(prev, kDepot);
  }
  return total;
}

std::vector<Pos> candidate_positions(const Layout& lay) {
  std::vector<Pos> critical;
  for (const Pos d : lay.prefix) {
    critical.push_back(floor_mod(d, lay.spacing));
    if (lay.threshold > 0) {
      critical.push_back(floor_mod(d - lay.threshold, lay.spacing));
    }
  }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
  // Cost is constant between consecutive critical offsets, so one
  // midpoint per open piece plus the critical points covers every value.
  std::vector<Pos> out = critical;
  for (std::size_t i = 0; i + 1 < critical.size(); ++i) {
    out.push_back((critical[i] + critical[i + 1]) / 2);
  }
  out.push_back(
      floor_mod((critical.back() + critical.front() + lay.spacing) / 2,
                lay.spacing));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

std::string_view to_string(Disposition d) {
  switch (d) {
  case Disposition::in_segment:
    return "in-segment";
  case Disposition::absorbed_left:
    return "absorbed-left";
  case Disposition::absorbed_right:
    return "absorbed-right";
  case Disposition::trivial_tour:
    return "trivial-tour";
  }
  return "unknown";
}

nlohmann::json to_json(const PartitionTrace& trace) {
  nlohmann::json doc;
  doc["delta"] = trace.delta.str();
  doc["offset"] = trace.offset.str();
  auto& bps = doc["breakpoints"] = nlohmann::json::array();
  for (const auto& b : trace.breakpoints) {
    bps.push_back(b.str());
  }
  auto& disp = doc["dispositions"] = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.customers.size(); ++i) {
    disp.push_back({{"customer", trace.customers[i]},
                    {"disposition", to_string(trace.dispositions[i])}});
  }
  doc["segments"] = trace.segments;
  doc["cost"] = trace.cost;
  doc["candidates"] = trace.candidates;
  doc["mean_candidate_cost"] = trace.mean_candidate_cost;
  return doc;
}

std::vector<Rational> itp_candidate_offsets(const Instance& inst,
                                            const Tour& tour,
                                            const Rational& delta) {
  const Layout lay = make_layout(inst, tour, delta);
  std::vector<Rational> out;
  for (const Pos p : candidate_positions(lay)) {
    out.push_back(to_rational(p, lay.scale));
  }
  return out;
}

ItpResult delta_itp_at_offset(const Instance& inst, const Tour& tour,
                              const Rational& delta, const Rational& offset) {
  const Layout lay = make_layout(inst, tour, delta);
  const Rational spacing = Rational(1) - delta;
  if (offset < Rational(0) || offset >= spacing) {
    throw std::invalid_argument("offset must lie in [0, 1 - delta)");
  }
  // offset * scale is integral only for offsets on the unit grid; scale
  // the layout up when a finer grid is requested.
  Layout fine = lay;
  const Rational scaled = offset * Rational::from_wide(lay.scale, 1);
  const Pos factor = scaled.den();
  fine.scale *= factor;
  fine.spacing *= factor;
  fine.threshold *= factor;
  for (auto& a : fine.demand) {
    a *= factor;
  }
  for (auto& p : fine.prefix) {
    p *= factor;
  }
  const Pos pos = static_cast<Pos>(scaled.num());
  auto result = materialize(inst, fine, delta, pos, partition(fine, pos));
  result.trace.candidates = 1;
  result.trace.mean_candidate_cost = result.trace.cost;
  return result;
}

ItpResult delta_itp(const Instance& inst, const Tour& tour,
                    const Rational& delta) {
  const Layout lay = make_layout(inst, tour, delta);
  if (lay.customers.empty()) {
    ItpResult empty;
    empty.trace.delta = delta;
    return empty;
  }
  const auto candidates = candidate_positions(lay);
  double best_cost = std::numeric_limits<double>::infinity();
  Pos best_offset = 0;
  double sum = 0.0;
  for (const Pos offset : candidates) {
    const double c = plan_cost(inst, lay, partition(lay, offset));
    sum += c;
    if (c < best_cost) {
      best_cost = c;
      best_offset = offset;
    }
  }
  auto result =
      materialize(inst, lay, delta, best_offset, partition(lay, best_offset));
  result.trace.candidates = candidates.size();
  result.trace.mean_candidate_cost = sum / static_cast<double>(candidates.size());
  return result;
}

ItpPlusResult delta_itp_plus(const Instance& inst, std::span<const int> subset,
                             const Tour& tour, const Rational& delta) {
  const Rational half(1, 2);
  ItpPlusResult out;
  std::vector<int> rest;
  for (const int v : subset) {
    if (inst.norm_demand(v) > half) {
      out.large.push_back(v);
    } else {
      rest.push_back(v);
    }
  }
  std::vector<int> on_tour(tour.customers().begin(), tour.customers().end());
  std::sort(on_tour.begin(), on_tour.end());
  std::sort(rest.begin(), rest.end());
  if (on_tour != rest) {
    throw std::invalid_argument(
        "delta_itp_plus: tour must visit exactly the non-large customers");
  }
  for (const int v : out.large) {
    out.solution.add(trivial_tour(inst, v), {v});
  }
  if (!rest.empty()) {
    auto partitioned = delta_itp(inst, tour, delta);
    out.solution.append(partitioned.solution);
    out.trace = std::move(partitioned.trace);
  }
  return out;
}

double itp_bound(const Instance& inst, std::span<const int> subset,
                 double tour_cost, const Rational& delta, ItpBound variant) {
  const double d = delta.to_double();
  const auto classes = classify(inst, subset, delta);
  const auto radial = [&](const CustomerSet& set) {
    return radial_mass(inst, set);
  };
  const auto depot_trips = [&](const CustomerSet& set) {
    double s = 0.0;
    for (const int v : set) {
      s += 2.0 * inst.cost(kDepot, v);
    }
    return s;
  };
  switch (variant) {
  case ItpBound::lemma1:
    return tour_cost + 2.0 * radial_mass(inst, subset);
  case ItpBound::lemma3: {
    CustomerSet non_small = classes.big;
    non_small.insert(non_small.end(), classes.large.begin(),
                     classes.large.end());
    return tour_cost + radial(classes.small) / (1.0 - d) +
           2.0 / (1.0 - d) * radial(non_small) -
           d / (1.0 - d) * depot_trips(non_small);
  }
  case ItpBound::lemma4:
    return tour_cost + radial(classes.small) / (1.0 - d) +
           2.0 / (1.0 - d) * radial(classes.big) -
           d / (1.0 - d) * depot_trips(classes.big) + depot_trips(classes.large);
  }
  return 0.0;
}

} // namespace ucvrp
