#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ucvrp/instance.hpp"
#include "ucvrp/itp.hpp"
#include "ucvrp/lp.hpp"
#include "ucvrp/matching.hpp"
#include "ucvrp/solution.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

enum class AlgorithmId {
  itp,
  ditp,
  ditp_plus,
  subalg1,
  subalg2,
  subalg3,
  subalg4,
  alg1,
  alg2,
  exact,
};

std::string_view to_string(AlgorithmId id);
// Accepts the names printed by to_string ("itp", "ditp", "ditp+", ...).
std::optional<AlgorithmId> parse_algorithm(std::string_view name);

struct BoundCertificate {
  std::string name;
  double cost = 0.0;
  double bound = 0.0;
  bool holds = false;
};

nlohmann::json to_json(const BoundCertificate& c);

// cost <= bound within 1e-9 relative.
BoundCertificate certify(std::string name, double cost, double bound);

struct PipelineResult {
  Solution solution;
  bool lp_solved = false;
  std::optional<double> lp_objective;
  RoundingOutcome rounding;
  CustomerSet leftover;
  double itp_cost = 0.0;
  std::optional<PartitionTrace> trace;
  std::vector<BoundCertificate> certificates;
  std::optional<nlohmann::json> lp_dump;
};

// A solved covering LP, shared between pipelines that use the same model.
struct LpContext {
  TourCatalog catalog;
  LpSolution lp;
};

LpContext build_lp(const Instance& inst, LpVariant variant,
                   const Rational& delta_lp);

// Round the covering LP with gamma, then serve the leftover customers (lp1:
// uncovered; lp2: uncovered non-small plus every small customer) with
// delta_itp-ITP+ along the shortcut of `tour`. Rounded tours are kept whole;
// a customer covered several times is served by the first selected set in
// catalog order. With gamma = 0 (or an empty cover set) no LP is built.
// `shared` reuses an already solved LP of the same variant.
PipelineResult lp_itp_pipeline(const Instance& inst, LpVariant variant,
                               const Rational& delta_lp, double gamma,
                               const Rational& delta_itp, std::uint64_t seed,
                               const Tour& tour,
                               const LpContext* shared = nullptr,
                               bool dump_lp = false);

struct SolveParams {
  std::optional<Rational> delta;  // default per algorithm
  std::optional<double> gamma;    // subalg2 / alg1
  std::optional<double> gamma1;   // subalg3 / alg2
  std::optional<double> gamma2;   // subalg4 / alg2
  std::uint64_t seed = 0;
  std::optional<Tour> tour;       // default: best available TSP tour on V
  bool trace = false;
  bool dump_lp = false;
};

struct SolveReport {
  AlgorithmId algorithm = AlgorithmId::alg1;
  nlohmann::json params;
  double cost = 0.0;
  std::map<std::string, double> branch_costs;
  double radial_bound = 0.0;
  double tsp_bound = 0.0;               // exact tour cost, or half the 2-approx
  std::optional<double> lp_bound;
  bool feasible = false;
  std::string feasibility;              // describe() of the check
  std::string alpha_tag;
  std::uint64_t seed = 0;
  bool lp_solved = false;
  bool catalog_fallback = false;
  std::vector<BoundCertificate> certificates;
  std::optional<double> ratio_bound;    // theoretical cost / OPT bound
  std::vector<std::string> notes;
  std::optional<nlohmann::json> trace;
  std::optional<nlohmann::json> lp_dump;
};

nlohmann::json to_json(const SolveReport& r);

struct SolveResult {
  Solution solution;
  SolveReport report;
};

SolveResult run_algorithm(const Instance& inst, AlgorithmId id,
                          const SolveParams& params);

// Alg.1: the better of SubAlg.1 and the LP-1 pipeline with gamma
// (default ln(2 - y0/2)). A catalog above the size cap falls back to the
// gamma = 0 pipeline.
SolveResult alg1(const Instance& inst, const SolveParams& params);

// Alg.2: the best of SubAlg.1 and the two LP-2 pipelines (delta default
// 1/5, gamma1 and gamma2 from the constants module).
SolveResult alg2(const Instance& inst, const SolveParams& params);

// alpha for a tour quality (exact 1, two_approx 2, external unknown).
std::optional<double> alpha_of(TourQuality q);

// Instance-specific cost / OPT guarantee of `id` with TSP ratio alpha,
// written with the normalised radial distribution; the pipelines' bounds
// are expectations over the rounding. None when the instance has zero
// radial mass or the algorithm has no bound.
std::optional<double> ratio_bound(const Instance& inst, AlgorithmId id,
                                  const SolveParams& params, double alpha);

struct RatioStats {
  double opt = 0.0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  std::optional<double> bound;
  std::size_t runs = 0;
  bool all_feasible = true;
};

RatioStats empirical_ratio(const Instance& inst, AlgorithmId id,
                           const SolveParams& params,
                           const std::vector<std::uint64_t>& seeds);

nlohmann::json to_json(const RatioStats& s);

} // namespace ucvrp
