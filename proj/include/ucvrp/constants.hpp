#pragma once

#include <functional>
#include <string>

#include <json.hpp>

namespace ucvrp {

// Bracket [lo, hi] of a simple root with g(lo) and g(hi) of opposite sign.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
  [[nodiscard]] double width() const { return hi - lo; }
};

// Bisection to width `tol`. Throws NoSignChange if g does not change sign
// on [a, b].
Enclosure bisect(const std::function<double(double)>& g, double a, double b,
                 double tol = 1e-12);

// Sign changes of g over `points` equally spaced samples of [a, b].
int count_sign_changes(const std::function<double(double)>& g, double a,
                       double b, int points = 10000);

// ln((1-eps)(2 - y/2)) - (3/2)(1-eps) y; eps = 0 gives the fixed-capacity
// balance equation whose root is y0.
double balance_fixed(double y, double eps = 0.0);

// (1/2)(1-eps) y + 6 (1-eps)(1-y)(1 - e^{-(1-eps) y/2}) - ln((1-eps)(2-2y));
// eps = 0 gives the general-capacity equation whose root is y1.
double balance_general(double y, double eps = 0.0);

// 4 (1-y)(1 - e^{-(1-eps) y / 2}).
double companion_y2(double y, double eps = 0.0);

Enclosure solve_y0(double eps = 0.0);
Enclosure solve_y1(double eps = 0.0);

// Interval image of companion_y2 over an enclosure of y1.
Enclosure y2_enclosure(const Enclosure& y1, double eps = 0.0);

// gamma* = ln(2 - y0/2), gamma1 = ln(2 - 2 y1 - y2/2), gamma2 = ln(2 - 2 y1).
double gamma_star();
double gamma1();
double gamma2();

// alpha + 1 + ln(2 - y0/2), as an enclosure from the y0 bracket.
Enclosure ratio_alg1(double alpha);
// alpha + 1 + y1 + ln(2 - 2 y1) + 2 delta.
Enclosure ratio_alg2(double alpha, double delta);

// Tour-quality penalty minimised by f(eps):
//   (1+zeta)/theta + (1-tau-theta)/(theta(1-tau)) + 3 eps/(1-theta)
//     + 3 rho/((1-rho)(1-tau)) - 1
// with zeta = m + eps/(tau rho) (1 - tau rho - m),
//      m = (3 rho + tau - 4 tau rho)/(1 - rho).
double tour_penalty(double theta, double tau, double rho, double eps);
double penalty_zeta(double tau, double rho, double eps);

struct PenaltyWitness {
  double eps = 0.0;
  double value = 0.0; // tour_penalty at the witness; an upper bound on f(eps)
  double theta = 0.0;
  double tau = 0.0;
  double rho = 0.0;
  double zeta = 0.0;
  int starts = 0;
  int evaluations = 0;
};

// Minimises tour_penalty over 0 < theta <= 1 - tau, 0 < tau, rho <= 1/6:
// a batched grid of starts followed by Nelder-Mead from the best ones.
// Throws DomainViolation if the witness leaves the box.
PenaltyWitness f_epsilon(double eps);

struct AppendixReport {
  double eps_fixed = 0.0;
  double eps_general = 0.0;
  double alpha = 1.5;
  Enclosure y0_eps;
  Enclosure y1_eps;
  double y2_eps = 0.0;
  PenaltyWitness f_fixed;
  PenaltyWitness f_general;
  // Upper bounds unless noted.
  double easy_fixed = 0.0;
  double hard_fixed = 0.0;
  double final_fixed = 0.0;
  double improvement_fixed = 0.0; // lower bound on ratio_alg1(alpha) - final
  double easy_general = 0.0;
  double hard_general = 0.0;
  double final_general = 0.0;
  double improvement_general = 0.0; // lower bound on ratio_alg2(alpha, 0) - final
};

AppendixReport appendix_a2(double eps_fixed = 0.000335,
                           double eps_general = 0.000334);

struct ConstantsReport {
  Enclosure y0;
  Enclosure y1;
  Enclosure y2;
  double gamma_star = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double residual_y0 = 0.0;
  double residual_y1 = 0.0;
  int sign_changes_y0 = 0;
  int sign_changes_y1 = 0;
  Enclosure ratio_alg1_15;
  Enclosure ratio_alg1_1;
  Enclosure ratio_alg2_15;
  AppendixReport appendix;
};

ConstantsReport constants_report(double eps_fixed = 0.000335,
                                 double eps_general = 0.000334);

nlohmann::json to_json(const Enclosure& e);
nlohmann::json to_json(const PenaltyWitness& w);
nlohmann::json to_json(const ConstantsReport& r);
std::string to_table(const ConstantsReport& r);

} // namespace ucvrp
