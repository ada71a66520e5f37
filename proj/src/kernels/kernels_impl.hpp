#pragma once

#include "ucvrp/kernels.hpp"

namespace ucvrp::kernels {

namespace scalar {
void relax_min(std::span<double> best, std::span<const double> row,
               double offset);
void relax_min_arg(std::span<double> best, std::span<std::int32_t> arg,
                   std::span<const double> row, std::int32_t label);
std::int64_t argmin(std::span<const double> values);
double dot(std::span<const double> a, std::span<const double> b);
double penalty_one(double theta, double tau, double rho, double eps);
void penalty_batch(std::span<const double> theta, std::span<const double> tau,
                   std::span<const double> rho, double eps,
                   std::span<double> out);
} // namespace scalar

#if defined(UCVRP_HAVE_AVX2)
namespace avx2 {
void relax_min(std::span<double> best, std::span<const double> row,
               double offset);
void relax_min_arg(std::span<double> best, std::span<std::int32_t> arg,
                   std::span<const double> row, std::int32_t label);
std::int64_t argmin(std::span<const double> values);
double dot(std::span<const double> a, std::span<const double> b);
void penalty_batch(std::span<const double> theta, std::span<const double> tau,
                   std::span<const double> rho, double eps,
                   std::span<double> out);
} // namespace avx2
#endif

} // namespace ucvrp::kernels
