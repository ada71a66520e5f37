#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ucvrp/instance.hpp"
#include "ucvrp/rational.hpp"

namespace ucvrp {

enum class LpVariant { lp1, lp2 };

inline constexpr std::uint64_t kDefaultCatalogCap = 5'000'000;

// Every demand-feasible customer set over the cover set, priced by an
// optimal tour. lp1 covers all customers; lp2 covers those above delta.
struct TourCatalog {
  LpVariant variant = LpVariant::lp1;
  Rational delta;
  CustomerSet cover;                 // rows, sorted
  std::vector<CustomerSet> sets;     // sorted ids, lexicographic order
  std::vector<double> costs;
  std::vector<std::uint64_t> keys;   // order-independent set identities
  bool exact_pricing = true;         // false if any set exceeded the TSP cap
};

// Throws CatalogTooLarge as soon as the count passes `size_cap`.
TourCatalog enumerate_tours(const Instance& inst, LpVariant variant,
                            const Rational& delta = Rational(0),
                            std::uint64_t size_cap = kDefaultCatalogCap);

// Identity of a customer set, independent of how it was produced.
std::uint64_t tour_key(const CustomerSet& sorted_ids);

struct LpSolution {
  std::vector<double> x;       // per catalog set, clamped to [0, 1]
  double objective = 0.0;
  std::vector<double> duals;   // per cover row, >= 0
  double dual_objective = 0.0;
  double max_coverage_violation = 0.0;
  double max_reduced_cost_violation = 0.0;
  bool certified = false;
  int iterations = 0;
};

// min sum c_T x_T  s.t.  sum_{T contains v} x_T >= 1 for v in cover,
// x >= 0. Revised simplex from the singleton-tour basis with Dantzig
// pricing (Bland's rule after a run of degenerate pivots). The result is
// checked against its dual: y >= 0, every reduced cost >= -tol and
// |primal - dual| <= tol, tol = 1e-9 max(1, |objective|). Throws
// LpFailure when the certificate fails.
LpSolution solve_covering_lp(const TourCatalog& catalog);

struct RoundingOutcome {
  std::vector<std::size_t> selected; // catalog indices, ascending
  CustomerSet uncovered;             // cover rows hit by no selected set
  double cost = 0.0;
};

// Selects set T independently with probability min(1, gamma x_T), one
// keyed draw per set so the outcome does not depend on catalog order.
RoundingOutcome round_tours(const TourCatalog& catalog, const LpSolution& lp,
                            double gamma, std::uint64_t seed);

// gamma = 0 never looks at the catalog or an LP.
RoundingOutcome round_nothing(const CustomerSet& cover);

nlohmann::json to_json(const TourCatalog& catalog, const LpSolution* lp);

} // namespace ucvrp
