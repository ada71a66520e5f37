#include "kernels_impl.hpp"

#include <cstdlib>
#include <string_view>

namespace ucvrp::kernels {

const KernelTable& scalar_table() {
  static constexpr KernelTable table{
      "scalar",        scalar::relax_min, scalar::relax_min_arg,
      scalar::argmin,  scalar::dot,       scalar::penalty_batch,
  };
  return table;
}

const KernelTable* avx2_table() {
#if defined(UCVRP_HAVE_AVX2)
  static constexpr KernelTable table{
      "avx2",        avx2::relax_min, avx2::relax_min_arg,
      avx2::argmin,  avx2::dot,       avx2::penalty_batch,
  };
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* forced = std::getenv("UCVRP_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") {
      return scalar_table();
    }
    const KernelTable* wide = avx2_table();
    return wide != nullptr ? *wide : scalar_table();
  }();
  return chosen;
}

} // namespace ucvrp::kernels
