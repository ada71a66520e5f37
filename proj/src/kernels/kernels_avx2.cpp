// Compiled with -mavx2 only; callers reach these through the dispatch table
// after a runtime CPU check. No FMA: the scalar reference is compiled
// without contraction and elementwise kernels must match it bit-for-bit.

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <limits>

namespace ucvrp::kernels::avx2 {

void relax_min(std::span<double> best, std::span<const double> row,
               double offset) {
  const std::size_t n = best.size();
  const __m256d off = _mm256_set1_pd(offset);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d cand = _mm256_add_pd(_mm256_loadu_pd(row.data() + j), off);
    const __m256d cur = _mm256_loadu_pd(best.data() + j);
    // min_pd(a, b) returns a only when a < b, mirroring the scalar branch.
    _mm256_storeu_pd(best.data() + j, _mm256_min_pd(cand, cur));
  }
  for (; j < n; ++j) {
    const double cand = row[j] + offset;
    if (cand < best[j]) {
      best[j] = cand;
    }
  }
}

void relax_min_arg(std::span<double> best, std::span<std::int32_t> arg,
                   std::span<const double> row, std::int32_t label) {
  const std::size_t n = best.size();
  const __m128i lab = _mm_set1_epi32(label);
  const __m256i pack = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d r = _mm256_loadu_pd(row.data() + j);
    const __m256d cur = _mm256_loadu_pd(best.data() + j);
    const __m256d lt = _mm256_cmp_pd(r, cur, _CMP_LT_OQ);
    _mm256_storeu_pd(best.data() + j, _mm256_blendv_pd(cur, r, lt));
    const __m128i mask32 = _mm256_castsi256_si128(
        _mm256_permutevar8x32_epi32(_mm256_castpd_si256(lt), pack));
    auto* a = reinterpret_cast<__m128i*>(arg.data() + j);
    _mm_storeu_si128(a, _mm_blendv_epi8(_mm_loadu_si128(a), lab, mask32));
  }
  for (; j < n; ++j) {
    if (row[j] < best[j]) {
      best[j] = row[j];
      arg[j] = label;
    }
  }
}

std::int64_t argmin(std::span<const double> values) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = values.size();
  const __m256d retired = _mm256_set1_pd(-inf);
  const __m256d pos_inf = _mm256_set1_pd(inf);
  __m256d lane_min = pos_inf;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d v = _mm256_loadu_pd(values.data() + j);
    v = _mm256_blendv_pd(v, pos_inf, _mm256_cmp_pd(v, retired, _CMP_EQ_OQ));
    lane_min = _mm256_min_pd(lane_min, v);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, lane_min);
  double min_value = lanes[0];
  for (int l = 1; l < 4; ++l) {
    min_value = lanes[l] < min_value ? lanes[l] : min_value;
  }
  for (std::size_t t = j; t < n; ++t) {
    if (values[t] != -inf && values[t] < min_value) {
      min_value = values[t];
    }
  }
  // Second pass recovers the first index attaining the minimum.
  for (std::size_t t = 0; t < n; ++t) {
    if (values[t] != -inf && values[t] == min_value) {
      return static_cast<std::int64_t>(t);
    }
  }
  return -1;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                           _mm256_loadu_pd(b.data() + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

void penalty_batch(std::span<const double> theta, std::span<const double> tau,
                   std::span<const double> rho, double eps,
                   std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d e = _mm256_set1_pd(eps);
  const __m256d three_e = _mm256_set1_pd(3.0 * eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d th = _mm256_loadu_pd(theta.data() + i);
    const __m256d ta = _mm256_loadu_pd(tau.data() + i);
    const __m256d rh = _mm256_loadu_pd(rho.data() + i);
    const __m256d one_m_rho = _mm256_sub_pd(one, rh);
    const __m256d one_m_tau = _mm256_sub_pd(one, ta);
    const __m256d tau_rho = _mm256_mul_pd(ta, rh);
    const __m256d mix = _mm256_div_pd(
        _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(three, rh), ta),
                      _mm256_mul_pd(_mm256_mul_pd(four, ta), rh)),
        one_m_rho);
    const __m256d zeta = _mm256_add_pd(
        mix, _mm256_mul_pd(_mm256_div_pd(e, tau_rho),
                           _mm256_sub_pd(_mm256_sub_pd(one, tau_rho), mix)));
    __m256d v = _mm256_div_pd(_mm256_add_pd(one, zeta), th);
    v = _mm256_add_pd(
        v, _mm256_div_pd(_mm256_sub_pd(one_m_tau, th),
                         _mm256_mul_pd(th, one_m_tau)));
    v = _mm256_add_pd(v, _mm256_div_pd(three_e, _mm256_sub_pd(one, th)));
    v = _mm256_add_pd(v, _mm256_div_pd(_mm256_mul_pd(three, rh),
                                       _mm256_mul_pd(one_m_rho, one_m_tau)));
    _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(v, one));
  }
  for (; i < n; ++i) {
    out[i] = scalar::penalty_one(theta[i], tau[i], rho[i], eps);
  }
}

} // namespace ucvrp::kernels::avx2
