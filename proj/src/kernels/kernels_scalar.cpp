#include "kernels_impl.hpp"

#include <limits>

namespace ucvrp::kernels::scalar {

void relax_min(std::span<double> best, std::span<const double> row,
               double offset) {
  const std::size_t n = best.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double cand = row[j] + offset;
    if (cand < best[j]) {
      best[j] = cand;
    }
  }
}

void relax_min_arg(std::span<double> best, std::span<std::int32_t> arg,
                   std::span<const double> row, std::int32_t label) {
  const std::size_t n = best.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (row[j] < best[j]) {
      best[j] = row[j];
      arg[j] = label;
    }
  }
}

std::int64_t argmin(std::span<const double> values) {
  constexpr double retired = -std::numeric_limits<double>::infinity();
  std::int64_t best = -1;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double v = values[j];
    if (v == retired) {
      continue;
    }
    if (best < 0 || v < best_value) {
      best = static_cast<std::int64_t>(j);
      best_value = v;
    }
  }
  return best;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

double penalty_one(double theta, double tau, double rho, double eps) {
  const double mix = (3.0 * rho + tau - 4.0 * tau * rho) / (1.0 - rho);
  const double zeta = mix + eps / (tau * rho) * (1.0 - tau * rho - mix);
  return (1.0 + zeta) / theta +
         (1.0 - tau - theta) / (theta * (1.0 - tau)) +
         3.0 * eps / (1.0 - theta) +
         3.0 * rho / ((1.0 - rho) * (1.0 - tau)) - 1.0;
}

void penalty_batch(std::span<const double> theta, std::span<const double> tau,
                   std::span<const double> rho, double eps,
                   std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = penalty_one(theta[i], tau[i], rho[i], eps);
  }
}

} // namespace ucvrp::kernels::scalar
