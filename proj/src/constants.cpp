#include "ucvrp/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "ucvrp/errors.hpp"
#include "ucvrp/kernels.hpp"

namespace ucvrp {

namespace {

constexpr double kSixth = 1.0 / 6.0;
constexpr double kUpperY = 1.0 - 1e-9;

// Monotone image of [lo, hi] under f.
Enclosure image(const Enclosure& e, const std::function<double(double)>& f) {
  const double a = f(e.lo);
  const double b = f(e.hi);
  return {std::min(a, b), std::max(a, b)};
}

struct Point3 {
  std::array<double, 3> x{};
  double f = 0.0;
};

// (s, tau, rho) with theta = s (1 - tau) keeps the feasible set a box.
bool inside(const std::array<double, 3>& p) {
  return p[0] > 0.0 && p[0] <= 1.0 && p[1] > 0.0 && p[1] <= kSixth &&
         p[2] > 0.0 && p[2] <= kSixth;
}

double objective(const std::array<double, 3>& p, double eps, int& evals) {
  ++evals;
  if (!inside(p)) {
    return std::numeric_limits<double>::infinity();
  }
  return tour_penalty(p[0] * (1.0 - p[1]), p[1], p[2], eps);
}

Point3 nelder_mead(std::array<double, 3> start, double eps, int& evals) {
  std::array<Point3, 4> simplex;
  simplex[0].x = start;
  for (int i = 0; i < 3; ++i) {
    simplex[i + 1].x = start;
    const double step = 0.05 * (i == 0 ? 1.0 : kSixth);
    // Step inward so the initial simplex stays in the box.
    simplex[i + 1].x[i] += (start[i] + step <= (i == 0 ? 1.0 : kSixth)) ? step : -step;
  }
  for (auto& p : simplex) {
    p.f = objective(p.x, eps, evals);
  }
  for (int iter = 0; iter < 20000; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Point3& a, const Point3& b) { return a.f < b.f; });
    double size = 0.0;
    for (int i = 1; i < 4; ++i) {
      for (int d = 0; d < 3; ++d) {
        size = std::max(size, std::abs(simplex[i].x[d] - simplex[0].x[d]));
      }
    }
    if (size < 1e-14) {
      break;
    }
    std::array<double, 3> centroid{};
    for (int i = 0; i < 3; ++i) {
      for (int d = 0; d < 3; ++d) {
        centroid[d] += simplex[i].x[d] / 3.0;
      }
    }
    const auto along = [&](double t) {
      std::array<double, 3> p{};
      for (int d = 0; d < 3; ++d) {
        p[d] = centroid[d] + t * (simplex[3].x[d] - centroid[d]);
      }
      return p;
    };
    Point3 refl{along(-1.0), 0.0};
    refl.f = objective(refl.x, eps, evals);
    if (refl.f < simplex[0].f) {
      Point3 expd{along(-2.0), 0.0};
      expd.f = objective(expd.x, eps, evals);
      simplex[3] = expd.f < refl.f ? expd : refl;
      continue;
    }
    if (refl.f < simplex[2].f) {
      simplex[3] = refl;
      continue;
    }
    Point3 contr{refl.f < simplex[3].f ? along(-0.5) : along(0.5), 0.0};
    contr.f = objective(contr.x, eps, evals);
    if (contr.f < std::min(refl.f, simplex[3].f)) {
      simplex[3] = contr;
      continue;
    }
    for (int i = 1; i < 4; ++i) {
      for (int d = 0; d < 3; ++d) {
        simplex[i].x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
      }
      simplex[i].f = objective(simplex[i].x, eps, evals);
    }
  }
  return *std::min_element(
      simplex.begin(), simplex.end(),
      [](const Point3& a, const Point3& b) { return a.f < b.f; });
}

} // namespace

Enclosure bisect(const std::function<double(double)>& g, double a, double b,
                 double tol) {
  double ga = g(a);
  const double gb = g(b);
  if (!(ga < 0.0 && gb > 0.0) && !(ga > 0.0 && gb < 0.0)) {
    throw NoSignChange("no sign change on [" + std::to_string(a) + ", " +
                       std::to_string(b) + "]");
  }
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) {
      break;
    }
    const double gm = g(m);
    if (gm == 0.0) {
      return {m, m};
    }
    if ((gm > 0.0) == (ga > 0.0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return {a, b};
}

int count_sign_changes(const std::function<double(double)>& g, double a,
                       double b, int points) {
  int changes = 0;
  double prev = g(a);
  for (int i = 1; i < points; ++i) {
    const double x = a + (b - a) * i / (points - 1);
    const double cur = g(x);
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
      ++changes;
    }
    if (cur != 0.0) {
      prev = cur;
    }
  }
  return changes;
}

double balance_fixed(double y, double eps) {
  return std::log((1.0 - eps) * (2.0 - 0.5 * y)) - 1.5 * (1.0 - eps) * y;
}

double balance_general(double y, double eps) {
  const double s = 1.0 - eps;
  return 0.5 * s * y + 6.0 * s * (1.0 - y) * (1.0 - std::exp(-0.5 * s * y)) -
         std::log(s * (2.0 - 2.0 * y));
}

double companion_y2(double y, double eps) {
  return 4.0 * (1.0 - y) * (1.0 - std::exp(-0.5 * (1.0 - eps) * y));
}

Enclosure solve_y0(double eps) {
  return bisect([eps](double y) { return balance_fixed(y, eps); }, 0.0, 1.0);
}

Enclosure solve_y1(double eps) {
  return bisect([eps](double y) { return balance_general(y, eps); }, 0.0,
                kUpperY);
}

Enclosure y2_enclosure(const Enclosure& y1, double eps) {
  return image(y1, [eps](double y) { return companion_y2(y, eps); });
}

double gamma_star() { return std::log(2.0 - 0.5 * solve_y0().mid()); }

double gamma1() {
  const auto y1 = solve_y1();
  const double y2 = companion_y2(y1.mid());
  return std::log(2.0 - 2.0 * y1.mid() - 0.5 * y2);
}

double gamma2() { return std::log(2.0 - 2.0 * solve_y1().mid()); }

Enclosure ratio_alg1(double alpha) {
  return image(solve_y0(), [alpha](double y) {
    return alpha + 1.0 + std::log(2.0 - 0.5 * y);
  });
}

Enclosure ratio_alg2(double alpha, double delta) {
  return image(solve_y1(), [alpha, delta](double y) {
    return alpha + 1.0 + y + std::log(2.0 - 2.0 * y) + 2.0 * delta;
  });
}

double penalty_zeta(double tau, double rho, double eps) {
  const double mix = (3.0 * rho + tau - 4.0 * tau * rho) / (1.0 - rho);
  return mix + eps / (tau * rho) * (1.0 - tau * rho - mix);
}

double tour_penalty(double theta, double tau, double rho, double eps) {
  double out = 0.0;
  kernels::scalar_table().penalty_batch({&theta, 1}, {&tau, 1}, {&rho, 1}, eps,
                                        {&out, 1});
  return out;
}

PenaltyWitness f_epsilon(double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("f_epsilon needs eps > 0");
  }
  // 10 x 10 x 10 starts: s linear in (0, 1], tau and rho log-spaced.
  constexpr int kGrid = 10;
  std::vector<std::array<double, 3>> starts;
  std::vector<double> theta;
  std::vector<double> tau;
  std::vector<double> rho;
  for (int a = 0; a < kGrid; ++a) {
    const double s = (a + 1.0) / kGrid;
    for (int b = 0; b < kGrid; ++b) {
      const double t = kSixth * std::pow(1e-3, 1.0 - (b + 1.0) / kGrid);
      for (int c = 0; c < kGrid; ++c) {
        const double r = kSixth * std::pow(1e-3, 1.0 - (c + 1.0) / kGrid);
        starts.push_back({s, t, r});
        theta.push_back(s * (1.0 - t));
        tau.push_back(t);
        rho.push_back(r);
      }
    }
  }
  std::vector<double> values(starts.size());
  kernels::active().penalty_batch(theta, tau, rho, eps, values);

  PenaltyWitness best;
  best.eps = eps;
  best.starts = static_cast<int>(starts.size());
  best.evaluations = static_cast<int>(starts.size());
  std::vector<std::size_t> order(starts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return values[i] < values[j] || (values[i] == values[j] && i < j);
  });
  best.value = std::numeric_limits<double>::infinity();
  constexpr std::size_t kRefine = 8;
  for (std::size_t r = 0; r < std::min(kRefine, order.size()); ++r) {
    auto p = nelder_mead(starts[order[r]], eps, best.evaluations);
    // A restart from the converged point guards against a collapsed simplex.
    p = nelder_mead(p.x, eps, best.evaluations);
    if (p.f < best.value) {
      best.value = p.f;
      best.theta = p.x[0] * (1.0 - p.x[1]);
      best.tau = p.x[1];
      best.rho = p.x[2];
    }
  }
  if (!(best.tau > 0.0 && best.tau <= kSixth && best.rho > 0.0 &&
        best.rho <= kSixth && best.theta > 0.0 &&
        best.theta <= 1.0 - best.tau)) {
    throw DomainViolation("f_epsilon witness left the feasible box");
  }
  best.value = tour_penalty(best.theta, best.tau, best.rho, eps);
  best.zeta = penalty_zeta(best.tau, best.rho, eps);
  return best;
}

AppendixReport appendix_a2(double eps_fixed, double eps_general) {
  AppendixReport rep;
  rep.eps_fixed = eps_fixed;
  rep.eps_general = eps_general;
  const double alpha = rep.alpha;

  // Fixed capacity.
  rep.y0_eps = solve_y0(eps_fixed);
  rep.f_fixed = f_epsilon(eps_fixed);
  const auto y0 = solve_y0();
  // Both ratio expressions decrease in y, so the lower root end bounds them.
  rep.easy_fixed = alpha + 1.0 +
                   std::log((1.0 - eps_fixed) * (2.0 - 0.5 * rep.y0_eps.lo));
  rep.hard_fixed = 2.0 + rep.f_fixed.value + std::log(2.0 - 0.5 * y0.lo);
  rep.final_fixed = std::max(rep.easy_fixed, rep.hard_fixed);
  rep.improvement_fixed = ratio_alg1(alpha).lo - rep.final_fixed;

  // General capacity.
  rep.y1_eps = solve_y1(eps_general);
  rep.y2_eps = companion_y2(rep.y1_eps.mid(), eps_general);
  rep.f_general = f_epsilon(eps_general);
  const auto y1 = solve_y1();
  const double s = 1.0 - eps_general;
  rep.easy_general = alpha + 1.0 + s * rep.y1_eps.lo +
                     std::log(s * (2.0 - 2.0 * rep.y1_eps.lo)) + 1e-100;
  rep.hard_general =
      2.0 + rep.f_general.value + y1.lo + std::log(2.0 - 2.0 * y1.lo);
  rep.final_general = std::max(rep.easy_general, rep.hard_general);
  rep.improvement_general = ratio_alg2(alpha, 0.0).lo - rep.final_general;
  return rep;
}

ConstantsReport constants_report(double eps_fixed, double eps_general) {
  ConstantsReport r;
  r.y0 = solve_y0();
  r.y1 = solve_y1();
  r.y2 = y2_enclosure(r.y1);
  r.gamma_star = gamma_star();
  r.gamma1 = gamma1();
  r.gamma2 = gamma2();
  r.residual_y0 = balance_fixed(r.y0.mid());
  r.residual_y1 = balance_general(r.y1.mid());
  r.sign_changes_y0 =
      count_sign_changes([](double y) { return balance_fixed(y); }, 0.0, 1.0);
  r.sign_changes_y1 = count_sign_changes(
      [](double y) { return balance_general(y); }, 0.0, kUpperY);
  r.ratio_alg1_15 = ratio_alg1(1.5);
  r.ratio_alg1_1 = ratio_alg1(1.0);
  r.ratio_alg2_15 = ratio_alg2(1.5, 1e-10);
  r.appendix = appendix_a2(eps_fixed, eps_general);
  return r;
}

nlohmann::json to_json(const Enclosure& e) {
  return {{"lo", e.lo}, {"hi", e.hi}, {"mid", e.mid()}, {"width", e.width()}};
}

nlohmann::json to_json(const PenaltyWitness& w) {
  return {{"eps", w.eps},     {"value", w.value}, {"theta", w.theta},
          {"tau", w.tau},     {"rho", w.rho},     {"zeta", w.zeta},
          {"starts", w.starts}, {"evaluations", w.evaluations}};
}

nlohmann::json to_json(const ConstantsReport& r) {
  const auto& a = r.appendix;
  nlohmann::json doc;
  doc["y0"] = to_json(r.y0);
  doc["y1"] = to_json(r.y1);
  doc["y2"] = to_json(r.y2);
  doc["gamma_star"] = r.gamma_star;
  doc["gamma1"] = r.gamma1;
  doc["gamma2"] = r.gamma2;
  doc["residuals"] = {{"y0", r.residual_y0}, {"y1", r.residual_y1}};
  doc["sign_changes"] = {{"y0", r.sign_changes_y0}, {"y1", r.sign_changes_y1}};
  doc["ratio_alg1"] = {{"alpha_1.5", to_json(r.ratio_alg1_15)},
                       {"alpha_1", to_json(r.ratio_alg1_1)}};
  doc["ratio_alg2"] = {{"alpha_1.5_delta_1e-10", to_json(r.ratio_alg2_15)}};
  doc["appendix"] = {
      {"alpha", a.alpha},
      {"fixed",
       {{"eps", a.eps_fixed},
        {"y0_eps", to_json(a.y0_eps)},
        {"f_eps", to_json(a.f_fixed)},
        {"easy_ratio", a.easy_fixed},
        {"hard_ratio", a.hard_fixed},
        {"final_ratio", a.final_fixed},
        {"improvement", a.improvement_fixed}}},
      {"general",
       {{"eps", a.eps_general},
        {"y1_eps", to_json(a.y1_eps)},
        {"y2_eps", a.y2_eps},
        {"f_eps", to_json(a.f_general)},
        {"easy_ratio", a.easy_general},
        {"hard_ratio", a.hard_general},
        {"final_ratio", a.final_general},
        {"improvement", a.improvement_general}}}};
  doc["checks"] = {
      {"0.39312 < y0", r.y0.lo > 0.39312},
      {"0.17458 < y1", r.y1.lo > 0.17458},
      {"ratio_alg1(1.5) < 3.0897", r.ratio_alg1_15.hi < 3.0897},
      {"ratio_alg2(1.5) < 3.1759", r.ratio_alg2_15.hi < 3.1759},
      {"f(eps_fixed) < 0.49967", a.f_fixed.value < 0.49967},
      {"f(eps_general) < 0.49915", a.f_general.value < 0.49915},
      {"0.39305 < y0_eps", a.y0_eps.lo > 0.39305},
      {"0.17457 < y1_eps", a.y1_eps.lo > 0.17457},
      {"final fixed <= 3.0894", a.final_fixed <= 3.0894},
      {"final general <= 3.1755", a.final_general <= 3.1755},
      {"improvement fixed >= 0.00031", a.improvement_fixed >= 0.00031},
      {"improvement general >= 0.00039", a.improvement_general >= 0.00039}};
  return doc;
}

std::string to_table(const ConstantsReport& r) {
  const auto& a = r.appendix;
  std::ostringstream out;
  out << std::setprecision(12);
  const auto row = [&](const std::string& name, const std::string& value) {
    out << std::left << std::setw(30) << name << value << "\n";
  };
  const auto enc = [](const Enclosure& e) {
    std::ostringstream s;
    s << std::setprecision(15) << "[" << e.lo << ", " << e.hi << "]";
    return s.str();
  };
  const auto num = [](double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
  };
  row("y0", enc(r.y0));
  row("y1", enc(r.y1));
  row("y2", enc(r.y2));
  row("gamma*", num(r.gamma_star));
  row("gamma1", num(r.gamma1));
  row("gamma2", num(r.gamma2));
  row("ratio_alg1(1.5)", enc(r.ratio_alg1_15));
  row("ratio_alg1(1)", enc(r.ratio_alg1_1));
  row("ratio_alg2(1.5, 1e-10)", enc(r.ratio_alg2_15));
  row("eps (fixed)", num(a.eps_fixed));
  row("  y0_eps", enc(a.y0_eps));
  row("  f(eps)", num(a.f_fixed.value));
  row("  easy / hard", num(a.easy_fixed) + " / " + num(a.hard_fixed));
  row("  final", num(a.final_fixed));
  row("  improvement", num(a.improvement_fixed));
  row("eps (general)", num(a.eps_general));
  row("  y1_eps", enc(a.y1_eps));
  row("  f(eps)", num(a.f_general.value));
  row("  easy / hard", num(a.easy_general) + " / " + num(a.hard_general));
  row("  final", num(a.final_general));
  row("  improvement", num(a.improvement_general));
  return out.str();
}

} // namespace ucvrp
