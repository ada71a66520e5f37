#include "ucvrp/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ucvrp/constants.hpp"
#include "ucvrp/errors.hpp"
#include "ucvrp/oracle.hpp"

namespace ucvrp {

namespace {

const Rational kThird(1, 3);
const Rational kHalf(1, 2);
const Rational kFifth(1, 5);

Tour tour_or_default(const Instance& inst, const SolveParams& params) {
  if (params.tour) {
    std::vector<int> on(params.tour->customers().begin(),
                        params.tour->customers().end());
    std::sort(on.begin(), on.end());
    if (on != inst.customers()) {
      throw std::invalid_argument("supplied tour must visit every customer");
    }
    return *params.tour;
  }
  return best_available_tsp(inst, inst.customers());
}

Rational delta_or(const SolveParams& params, const Rational& fallback) {
  return params.delta.value_or(fallback);
}

Tour tour_for_set(const Instance& inst, const CustomerSet& set) {
  if (set.size() <= heldkarp_cap()) {
    return exact_tsp(inst, set);
  }
  return approx_tsp(inst, set);
}

CustomerSet non_large(const Instance& inst, const CustomerSet& set) {
  CustomerSet out;
  for (const int v : set) {
    if (inst.norm_demand(v) <= kHalf) {
      out.push_back(v);
    }
  }
  return out;
}

nlohmann::json params_json(AlgorithmId id, const SolveParams& p,
                           const std::optional<Rational>& delta,
                           const std::optional<double>& gamma,
                           const std::optional<double>& g1,
                           const std::optional<double>& g2) {
  nlohmann::json doc;
  doc["delta"] = delta ? nlohmann::json(delta->str()) : nlohmann::json(nullptr);
  doc["gamma"] = gamma ? nlohmann::json(*gamma) : nlohmann::json(nullptr);
  doc["gamma1"] = g1 ? nlohmann::json(*g1) : nlohmann::json(nullptr);
  doc["gamma2"] = g2 ? nlohmann::json(*g2) : nlohmann::json(nullptr);
  doc["seed"] = p.seed;
  doc["algorithm"] = to_string(id);
  return doc;
}

void absorb_pipeline(SolveReport& rep, const PipelineResult& p,
                     const std::string& branch) {
  rep.branch_costs[branch] = p.solution.cost;
  rep.lp_solved = rep.lp_solved || p.lp_solved;
  if (p.lp_objective) {
    rep.lp_bound = rep.lp_bound ? std::max(*rep.lp_bound, *p.lp_objective)
                                : *p.lp_objective;
  }
  for (const auto& c : p.certificates) {
    auto named = c;
    named.name = branch + ":" + c.name;
    rep.certificates.push_back(std::move(named));
  }
  if (p.lp_dump && !rep.lp_dump) {
    rep.lp_dump = p.lp_dump;
  }
}

void absorb_subalg1(SolveReport& rep, const Subalg1Result& s) {
  rep.branch_costs["subalg1"] = s.solution.cost;
  rep.certificates.push_back(
      certify("subalg1:matching+itp", s.solution.cost, s.bound));
}

std::optional<double> gamma_or_default(const std::optional<double>& g,
                                       double (*fallback)()) {
  if (g) {
    if (*g < 0.0) {
      throw std::invalid_argument("gamma must be non-negative");
    }
    return g;
  }
  return fallback();
}

double tsp_lower_bound(const Instance& inst, const Tour& tour) {
  if (tour.quality == TourQuality::exact) {
    return tour.cost;
  }
  const auto all = inst.customers();
  if (all.size() <= heldkarp_cap()) {
    return exact_tsp(inst, all).cost;
  }
  return 0.5 * approx_tsp(inst, all).cost;
}

} // namespace

std::string_view to_string(AlgorithmId id) {
  switch (id) {
  case AlgorithmId::itp:
    return "itp";
  case AlgorithmId::ditp:
    return "ditp";
  case AlgorithmId::ditp_plus:
    return "ditp+";
  case AlgorithmId::subalg1:
    return "subalg1";
  case AlgorithmId::subalg2:
    return "subalg2";
  case AlgorithmId::subalg3:
    return "subalg3";
  case AlgorithmId::subalg4:
    return "subalg4";
  case AlgorithmId::alg1:
    return "alg1";
  case AlgorithmId::alg2:
    return "alg2";
  case AlgorithmId::exact:
    return "exact";
  }
  return "unknown";
}

std::optional<AlgorithmId> parse_algorithm(std::string_view name) {
  for (const auto id :
       {AlgorithmId::itp, AlgorithmId::ditp, AlgorithmId::ditp_plus,
        AlgorithmId::subalg1, AlgorithmId::subalg2, AlgorithmId::subalg3,
        AlgorithmId::subalg4, AlgorithmId::alg1, AlgorithmId::alg2,
        AlgorithmId::exact}) {
    if (to_string(id) == name) {
      return id;
    }
  }
  return std::nullopt;
}

nlohmann::json to_json(const BoundCertificate& c) {
  return {{"name", c.name}, {"cost", c.cost}, {"bound", c.bound},
          {"holds", c.holds}};
}

BoundCertificate certify(std::string name, double cost, double bound) {
  return {std::move(name), cost, bound,
          cost <= bound + 1e-9 * std::max(1.0, std::abs(bound))};
}

LpContext build_lp(const Instance& inst, LpVariant variant,
                   const Rational& delta_lp) {
  LpContext ctx;
  ctx.catalog = enumerate_tours(inst, variant, delta_lp);
  ctx.lp = solve_covering_lp(ctx.catalog);
  return ctx;
}

PipelineResult lp_itp_pipeline(const Instance& inst, LpVariant variant,
                               const Rational& delta_lp, double gamma,
                               const Rational& delta_itp, std::uint64_t seed,
                               const Tour& tour, const LpContext* shared,
                               bool dump_lp) {
  if (gamma < 0.0) {
    throw std::invalid_argument("gamma must be non-negative");
  }
  PipelineResult out;
  CustomerSet cover;
  CustomerSet small;
  for (int v = 1; v <= inst.n(); ++v) {
    if (variant == LpVariant::lp1 || inst.norm_demand(v) > delta_lp) {
      cover.push_back(v);
    } else {
      small.push_back(v);
    }
  }

  std::optional<LpContext> local;
  const LpContext* ctx = nullptr;
  if (gamma > 0.0 && !cover.empty()) {
    if (shared != nullptr) {
      ctx = shared;
    } else {
      local = build_lp(inst, variant, delta_lp);
      ctx = &*local;
    }
    out.lp_solved = true;
    out.lp_objective = ctx->lp.objective;
    out.rounding = round_tours(ctx->catalog, ctx->lp, gamma, seed);
    if (dump_lp) {
      out.lp_dump = to_json(ctx->catalog, &ctx->lp);
    }
  } else {
    out.rounding = round_nothing(cover);
  }

  std::vector<char> assigned(inst.n() + 1, 0);
  for (const std::size_t j : out.rounding.selected) {
    const auto& set = ctx->catalog.sets[j];
    std::vector<int> serve;
    for (const int v : set) {
      if (!assigned[v]) {
        assigned[v] = 1;
        serve.push_back(v);
      }
    }
    out.solution.add(tour_for_set(inst, set), std::move(serve));
  }

  out.leftover = out.rounding.uncovered;
  if (variant == LpVariant::lp2) {
    out.leftover.insert(out.leftover.end(), small.begin(), small.end());
    std::sort(out.leftover.begin(), out.leftover.end());
  }
  if (!out.leftover.empty()) {
    const Tour sub = shortcut(inst, tour, non_large(inst, out.leftover));
    auto plus = delta_itp_plus(inst, out.leftover, sub, delta_itp);
    out.itp_cost = plus.solution.cost;
    out.solution.append(plus.solution);
    out.trace = std::move(plus.trace);
    out.certificates.push_back(
        certify("itp+ leftover",
                out.itp_cost,
                itp_bound(inst, out.leftover, sub.cost, delta_itp,
                          ItpBound::lemma4)));
  }
  if (!out.lp_solved) {
    out.certificates.push_back(certify(
        "itp+ on full tour", out.solution.cost,
        itp_bound(inst, inst.customers(), tour.cost, delta_itp, ItpBound::lemma4)));
  }
  return out;
}

std::optional<double> alpha_of(TourQuality q) {
  switch (q) {
  case TourQuality::exact:
    return 1.0;
  case TourQuality::two_approx:
    return 2.0;
  case TourQuality::external:
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> ratio_bound(const Instance& inst, AlgorithmId id,
                                  const SolveParams& params, double alpha) {
  const auto F = [&](const Rational& l, const Rational& r, int t) {
    return f_integral(inst, l, r, t);
  };
  const Rational zero(0);
  const Rational one(1);
  try {
    switch (id) {
    case AlgorithmId::itp:
    case AlgorithmId::ditp: {
      const Rational delta =
          id == AlgorithmId::itp ? zero : delta_or(params, kThird);
      const double d = delta.to_double();
      return alpha + F(zero, delta, 1) / (1 - d) +
             2 / (1 - d) * F(delta, one, 1) - d / (1 - d) * F(delta, one, 0);
    }
    case AlgorithmId::ditp_plus: {
      const Rational delta = delta_or(params, kThird);
      const double d = delta.to_double();
      return alpha + F(zero, delta, 1) / (1 - d) +
             2 / (1 - d) * F(delta, kHalf, 1) -
             d / (1 - d) * F(delta, kHalf, 0) + F(kHalf, one, 0);
    }
    case AlgorithmId::subalg1:
      return alpha + 1 + 1.5 * F(zero, kThird, 1);
    case AlgorithmId::subalg2: {
      const double g = params.gamma.value_or(gamma_star());
      return alpha + g +
             std::exp(-g) * (1.5 * F(zero, kThird, 1) + 3 * F(kThird, kHalf, 1) -
                             0.5 * F(kThird, kHalf, 0) + F(kHalf, one, 0));
    }
    case AlgorithmId::subalg3: {
      const Rational delta = delta_or(params, kFifth);
      if (delta >= kThird) {
        return std::nullopt;
      }
      const double g = params.gamma1.value_or(gamma1());
      return alpha + 1.5 * F(zero, delta, 1) + g +
             std::exp(-g) * (1.5 * F(delta, kThird, 1) + 3 * F(kThird, kHalf, 1) -
                             0.5 * F(kThird, kHalf, 0) + F(kHalf, one, 0));
    }
    case AlgorithmId::subalg4: {
      const Rational delta = delta_or(params, kFifth);
      if (delta >= kHalf) {
        return std::nullopt;
      }
      const double d = delta.to_double();
      const double g = params.gamma2.value_or(gamma2());
      return alpha + F(zero, delta, 1) / (1 - d) + g +
             std::exp(-g) * (2 / (1 - d) * F(delta, kHalf, 1) -
                             d / (1 - d) * F(delta, kHalf, 0) + F(kHalf, one, 0));
    }
    case AlgorithmId::alg1:
      return ratio_alg1(alpha).hi;
    case AlgorithmId::alg2:
      return ratio_alg2(alpha, delta_or(params, kFifth).to_double()).hi;
    case AlgorithmId::exact:
      return 1.0;
    }
  } catch (const ZeroRadialMass&) {
    return std::nullopt;
  }
  return std::nullopt;
}

namespace {

SolveResult alg1_branches(const Instance& inst, const SolveParams& params) {
  SolveResult res;
  auto& rep = res.report;
  const Tour tour = tour_or_default(inst, params);
  const double gamma = *gamma_or_default(params.gamma, gamma_star);
  rep.params = params_json(AlgorithmId::alg1, params, std::nullopt, gamma,
                           std::nullopt, std::nullopt);
  rep.alpha_tag = std::string(to_string(tour.quality));

  auto s1 = subalg1(inst, tour);
  absorb_subalg1(rep, s1);
  PipelineResult p;
  try {
    p = lp_itp_pipeline(inst, LpVariant::lp1, Rational(0), gamma, kThird,
                        params.seed, tour, nullptr, params.dump_lp);
  } catch (const CatalogTooLarge& e) {
    rep.catalog_fallback = true;
    rep.notes.push_back(std::string("LP-1 catalog above cap, gamma = 0 used: ") +
                        e.what());
    p = lp_itp_pipeline(inst, LpVariant::lp1, Rational(0), 0.0, kThird,
                        params.seed, tour);
  }
  absorb_pipeline(rep, p, "subalg2");
  if (s1.solution.cost <= p.solution.cost) {
    res.solution = std::move(s1.solution);
    if (params.trace) {
      rep.trace = nlohmann::json{{"branch", "subalg1"},
                                 {"matching", to_json(s1.plan)}};
      if (s1.trace) {
        (*rep.trace)["partition"] = to_json(*s1.trace);
      }
    }
  } else {
    res.solution = std::move(p.solution);
    if (params.trace) {
      rep.trace = nlohmann::json{{"branch", "subalg2"},
                                 {"leftover", p.leftover}};
      if (p.trace) {
        (*rep.trace)["partition"] = to_json(*p.trace);
      }
    }
  }
  return res;
}

SolveResult alg2_branches(const Instance& inst, const SolveParams& params) {
  SolveResult res;
  auto& rep = res.report;
  const Tour tour = tour_or_default(inst, params);
  const Rational delta = delta_or(params, kFifth);
  if (delta <= Rational(0) || delta >= kHalf) {
    throw std::invalid_argument("alg2 needs 0 < delta < 1/2");
  }
  if (delta >= kThird) {
    rep.notes.push_back("delta >= 1/3 lies outside the analysed range");
  }
  const double g1 = *gamma_or_default(params.gamma1, gamma1);
  const double g2 = *gamma_or_default(params.gamma2, gamma2);
  rep.params =
      params_json(AlgorithmId::alg2, params, delta, std::nullopt, g1, g2);
  rep.alpha_tag = std::string(to_string(tour.quality));

  auto s1 = subalg1(inst, tour);
  absorb_subalg1(rep, s1);
  std::optional<LpContext> ctx;
  const auto all = inst.customers();
  const bool any_cover = std::any_of(all.begin(), all.end(), [&](int v) {
    return inst.norm_demand(v) > delta;
  });
  if ((g1 > 0.0 || g2 > 0.0) && any_cover) {
    ctx = build_lp(inst, LpVariant::lp2, delta);
  }
  const LpContext* shared = ctx ? &*ctx : nullptr;
  auto p3 = lp_itp_pipeline(inst, LpVariant::lp2, delta, g1, kThird,
                            params.seed, tour, shared, params.dump_lp);
  auto p4 = lp_itp_pipeline(inst, LpVariant::lp2, delta, g2, delta,
                            params.seed, tour, shared, false);
  absorb_pipeline(rep, p3, "subalg3");
  absorb_pipeline(rep, p4, "subalg4");

  const double c1 = s1.solution.cost;
  const double c3 = p3.solution.cost;
  const double c4 = p4.solution.cost;
  std::string branch;
  if (c1 <= c3 && c1 <= c4) {
    res.solution = std::move(s1.solution);
    branch = "subalg1";
  } else if (c3 <= c4) {
    res.solution = std::move(p3.solution);
    branch = "subalg3";
  } else {
    res.solution = std::move(p4.solution);
    branch = "subalg4";
  }
  if (params.trace) {
    rep.trace = nlohmann::json{{"branch", branch}};
  }
  return res;
}

} // namespace

SolveResult run_algorithm(const Instance& inst, AlgorithmId id,
                          const SolveParams& params) {
  SolveResult res;
  Tour tour;
  if (id != AlgorithmId::exact) {
    tour = tour_or_default(inst, params);
  }
  SolveParams p = params;
  p.tour = tour;

  switch (id) {
  case AlgorithmId::alg1:
    res = alg1_branches(inst, p);
    break;
  case AlgorithmId::alg2:
    res = alg2_branches(inst, p);
    break;
  case AlgorithmId::exact: {
    auto oracle = exact_cvrp(inst);
    res.solution = std::move(oracle.solution);
    res.report.params = params_json(id, p, std::nullopt, std::nullopt,
                                    std::nullopt, std::nullopt);
    res.report.alpha_tag = "exact";
    res.report.branch_costs["exact"] = oracle.opt_cost;
    if (params.trace) {
      res.report.trace = to_json(oracle);
    }
    break;
  }
  case AlgorithmId::itp:
  case AlgorithmId::ditp: {
    const Rational delta =
        id == AlgorithmId::itp ? Rational(0) : delta_or(p, kThird);
    auto r = delta_itp(inst, tour, delta);
    res.report.params =
        params_json(id, p, delta, std::nullopt, std::nullopt, std::nullopt);
    res.report.certificates.push_back(certify(
        id == AlgorithmId::itp ? "itp" : "ditp", r.solution.cost,
        itp_bound(inst, inst.customers(), tour.cost, delta,
                  id == AlgorithmId::itp ? ItpBound::lemma1 : ItpBound::lemma3)));
    res.report.branch_costs[std::string(to_string(id))] = r.solution.cost;
    if (params.trace) {
      res.report.trace = to_json(r.trace);
    }
    res.solution = std::move(r.solution);
    break;
  }
  case AlgorithmId::ditp_plus: {
    const Rational delta = delta_or(p, kThird);
    const auto all = inst.customers();
    const Tour sub = shortcut(inst, tour, non_large(inst, all));
    auto r = delta_itp_plus(inst, all, sub, delta);
    res.report.params =
        params_json(id, p, delta, std::nullopt, std::nullopt, std::nullopt);
    res.report.certificates.push_back(
        certify("ditp+", r.solution.cost,
                itp_bound(inst, all, sub.cost, delta, ItpBound::lemma4)));
    res.report.branch_costs["ditp+"] = r.solution.cost;
    if (params.trace) {
      nlohmann::json t{{"large", r.large}};
      if (r.trace) {
        t["partition"] = to_json(*r.trace);
      }
      res.report.trace = std::move(t);
    }
    res.solution = std::move(r.solution);
    break;
  }
  case AlgorithmId::subalg1: {
    auto s = subalg1(inst, tour);
    res.report.params = params_json(id, p, std::nullopt, std::nullopt,
                                    std::nullopt, std::nullopt);
    absorb_subalg1(res.report, s);
    if (params.trace) {
      nlohmann::json t{{"matching", to_json(s.plan)}};
      if (s.trace) {
        t["partition"] = to_json(*s.trace);
      }
      res.report.trace = std::move(t);
    }
    res.solution = std::move(s.solution);
    break;
  }
  case AlgorithmId::subalg2:
  case AlgorithmId::subalg3:
  case AlgorithmId::subalg4: {
    const bool lp1 = id == AlgorithmId::subalg2;
    const Rational delta_lp = lp1 ? Rational(0) : delta_or(p, kFifth);
    double gamma = 0.0;
    if (id == AlgorithmId::subalg2) {
      gamma = *gamma_or_default(p.gamma, gamma_star);
    } else if (id == AlgorithmId::subalg3) {
      gamma = *gamma_or_default(p.gamma1, gamma1);
    } else {
      gamma = *gamma_or_default(p.gamma2, gamma2);
    }
    const Rational delta_itp = id == AlgorithmId::subalg4 ? delta_lp : kThird;
    auto r = lp_itp_pipeline(inst, lp1 ? LpVariant::lp1 : LpVariant::lp2,
                             delta_lp, gamma, delta_itp, p.seed, tour, nullptr,
                             p.dump_lp);
    res.report.params = params_json(
        id, p, lp1 ? std::nullopt : std::optional<Rational>(delta_lp),
        id == AlgorithmId::subalg2 ? std::optional<double>(gamma) : std::nullopt,
        id == AlgorithmId::subalg3 ? std::optional<double>(gamma) : std::nullopt,
        id == AlgorithmId::subalg4 ? std::optional<double>(gamma) : std::nullopt);
    if (!lp1 && delta_lp >= kThird) {
      res.report.notes.push_back("delta >= 1/3 lies outside the analysed range");
    }
    absorb_pipeline(res.report, r, std::string(to_string(id)));
    if (params.trace) {
      nlohmann::json t{{"leftover", r.leftover},
                       {"selected", r.rounding.selected}};
      if (r.trace) {
        t["partition"] = to_json(*r.trace);
      }
      res.report.trace = std::move(t);
    }
    res.solution = std::move(r.solution);
    break;
  }
  }

  auto& rep = res.report;
  rep.algorithm = id;
  rep.seed = params.seed;
  rep.cost = res.solution.cost;
  if (id != AlgorithmId::exact) {
    rep.alpha_tag = std::string(to_string(tour.quality));
  }
  const auto feas = check_feasible(inst, res.solution);
  rep.feasible = feas.ok();
  rep.feasibility = feas.describe();
  rep.radial_bound = radial_lower_bound(inst);
  rep.tsp_bound = id == AlgorithmId::exact
                      ? tsp_lower_bound(inst, Tour{})
                      : tsp_lower_bound(inst, tour);
  const auto alpha =
      id == AlgorithmId::exact ? std::optional<double>(1.0) : alpha_of(tour.quality);
  if (alpha) {
    rep.ratio_bound = ratio_bound(inst, id, p, *alpha);
  }
  return res;
}

SolveResult alg1(const Instance& inst, const SolveParams& params) {
  return run_algorithm(inst, AlgorithmId::alg1, params);
}

SolveResult alg2(const Instance& inst, const SolveParams& params) {
  return run_algorithm(inst, AlgorithmId::alg2, params);
}

nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json doc;
  doc["algorithm"] = to_string(r.algorithm);
  doc["params"] = r.params;
  doc["cost"] = r.cost;
  doc["branch_costs"] = r.branch_costs;
  doc["lower_bounds"] = {
      {"radial", r.radial_bound},
      {"tsp", r.tsp_bound},
      {"lp", r.lp_bound ? nlohmann::json(*r.lp_bound) : nlohmann::json(nullptr)}};
  doc["feasible"] = r.feasible;
  doc["feasibility"] = r.feasibility;
  doc["alpha_tag"] = r.alpha_tag;
  doc["seed"] = r.seed;
  doc["lp_solved"] = r.lp_solved;
  doc["catalog_fallback"] = r.catalog_fallback;
  auto& certs = doc["certificates"] = nlohmann::json::array();
  for (const auto& c : r.certificates) {
    certs.push_back(to_json(c));
  }
  doc["ratio_bound"] =
      r.ratio_bound ? nlohmann::json(*r.ratio_bound) : nlohmann::json(nullptr);
  doc["notes"] = r.notes;
  if (r.trace) {
    doc["trace"] = *r.trace;
  }
  if (r.lp_dump) {
    doc["lp"] = *r.lp_dump;
  }
  return doc;
}

RatioStats empirical_ratio(const Instance& inst, AlgorithmId id,
                           const SolveParams& params,
                           const std::vector<std::uint64_t>& seeds) {
  RatioStats stats;
  stats.opt = exact_cvrp(inst).opt_cost;
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  SolveParams p = params;
  if (!p.tour && id != AlgorithmId::exact) {
    p.tour = tour_or_default(inst, params);
  }
  for (const auto seed : seeds) {
    p.seed = seed;
    const auto res = run_algorithm(inst, id, p);
    stats.all_feasible = stats.all_feasible && res.report.feasible;
    const double ratio = stats.opt > 0.0 ? res.report.cost / stats.opt : 1.0;
    stats.min = std::min(stats.min, ratio);
    stats.max = std::max(stats.max, ratio);
    sum += ratio;
    stats.bound = res.report.ratio_bound;
    ++stats.runs;
  }
  stats.mean = stats.runs > 0 ? sum / static_cast<double>(stats.runs) : 0.0;
  return stats;
}

nlohmann::json to_json(const RatioStats& s) {
  return {{"opt", s.opt},   {"min", s.min},   {"mean", s.mean},
          {"max", s.max},   {"runs", s.runs}, {"all_feasible", s.all_feasible},
          {"bound", s.bound ? nlohmann::json(*s.bound) : nlohmann::json(nullptr)}};
}

} // namespace ucvrp
