#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ucvrp/instance.hpp"
#include "ucvrp/rational.hpp"
#include "ucvrp/solution.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

enum class Disposition { in_segment, absorbed_left, absorbed_right, trivial_tour };

std::string_view to_string(Disposition d);

// Witness of one tour partition. Positions live on the normalised demand
// line where customer i of the tour occupies [D_{i-1}, D_i).
struct PartitionTrace {
  Rational delta;
  Rational offset;
  std::vector<Rational> breakpoints; // offset + m(1 - delta), inside (0, D)
  std::vector<int> customers;        // tour order
  std::vector<Disposition> dispositions; // parallel to customers
  std::vector<std::vector<int>> segments; // final multi-customer or absorbed groups
  double cost = 0.0;
  std::size_t candidates = 0;        // offsets evaluated by derandomization
  double mean_candidate_cost = 0.0;
};

nlohmann::json to_json(const PartitionTrace& trace);

struct ItpResult {
  Solution solution;
  PartitionTrace trace;
};

// Tour partitioning with threshold delta in [0, 1/2): breakpoints every
// (1 - delta) units of normalised demand along `tour`; a customer cut by
// a breakpoint joins the segment on its left when the load stays within
// capacity, otherwise it gets a trivial tour, after which trivial tours
// are merged into an adjacent segment when capacity allows (preferring
// the side holding more of the customer's demand interval, then left).
// The offset is derandomized: every critical offset and every midpoint
// between consecutive critical offsets is evaluated and the cheapest kept
// (ties by smallest offset). delta = 0 is the classic partitioning.
// Serves exactly the customers of `tour`.
ItpResult delta_itp(const Instance& inst, const Tour& tour,
                    const Rational& delta);

// Same partition at one fixed offset in [0, 1 - delta).
ItpResult delta_itp_at_offset(const Instance& inst, const Tour& tour,
                              const Rational& delta, const Rational& offset);

// Offsets delta_itp evaluates, sorted ascending.
std::vector<Rational> itp_candidate_offsets(const Instance& inst,
                                            const Tour& tour,
                                            const Rational& delta);

struct ItpPlusResult {
  Solution solution;
  std::optional<PartitionTrace> trace; // absent when no customer is non-large
  CustomerSet large;
};

// Large customers of `subset` (demand above 1/2) get trivial tours; the
// rest are partitioned with delta_itp along `tour`, which must visit
// exactly the non-large customers of `subset`.
ItpPlusResult delta_itp_plus(const Instance& inst, std::span<const int> subset,
                             const Tour& tour, const Rational& delta);

enum class ItpBound { lemma1, lemma3, lemma4 };

// Closed-form cost guarantees over `subset`, with s/b/l the small, big
// and large customers relative to delta and R_X = sum_{v in X} 2 d_v c(r,v):
//   lemma1: tour + 2 R_V
//   lemma3: tour + R_s/(1-delta) + 2 R_{b+l}/(1-delta)
//                - delta/(1-delta) sum_{b+l} 2 c(r,v)
//   lemma4: as lemma3 with the large terms replaced by sum_l 2 c(r,v)
double itp_bound(const Instance& inst, std::span<const int> subset,
                 double tour_cost, const Rational& delta, ItpBound variant);

} // namespace ucvrp
