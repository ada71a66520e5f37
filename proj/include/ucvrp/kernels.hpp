#pragma once

// Data-parallel inner loops shared by the solvers. Every kernel has a
// portable scalar reference and, on x86-64, an AVX2 variant; the active
// table is chosen once at runtime from the CPU feature flags.
//
// Set UCVRP_SIMD=scalar in the environment to force the reference path.

#include <cstdint>
#include <span>
#include <string_view>

namespace ucvrp::kernels {

// best[j] = min(best[j], row[j] + offset). Exact (min of identical sums),
// so every variant produces bit-identical output.
using RelaxMinFn = void (*)(std::span<double> best, std::span<const double> row,
                            double offset);

// Where row[j] < best[j]: best[j] = row[j], arg[j] = label. Slots holding
// -infinity are retired and never change.
using RelaxMinArgFn = void (*)(std::span<double> best,
                               std::span<std::int32_t> arg,
                               std::span<const double> row,
                               std::int32_t label);

// Index of the first minimum among entries that are not -infinity;
// -1 when every entry is retired (or the span is empty).
using ArgMinFn = std::int64_t (*)(std::span<const double> values);

// Sum of a[i] * b[i]. Summation order differs between variants, so results
// agree only to rounding.
using DotFn = double (*)(std::span<const double> a, std::span<const double> b);

// Batch evaluation of the tour-quality penalty function over (theta, tau,
// rho) triples for a fixed epsilon; see constants.hpp. Elementwise with the
// same operation order, so variants agree bit-for-bit.
using PenaltyBatchFn = void (*)(std::span<const double> theta,
                                std::span<const double> tau,
                                std::span<const double> rho, double eps,
                                std::span<double> out);

struct KernelTable {
  std::string_view name;
  RelaxMinFn relax_min;
  RelaxMinArgFn relax_min_arg;
  ArgMinFn argmin;
  DotFn dot;
  PenaltyBatchFn penalty_batch;
};

const KernelTable& scalar_table();

// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_table();

// The table selected for this process.
const KernelTable& active();

} // namespace ucvrp::kernels
