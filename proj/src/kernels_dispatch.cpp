#include <cstdlib>
#include <string_view>

#include "volterra/kernels.hpp"

namespace volterra::kernels {

#if defined(VOLTERRA_HAVE_AVX2)
const KernelTable& avx2_table_unchecked() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(VOLTERRA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& resolve() noexcept {
  if (const char* forced = std::getenv("VOLTERRA_KERNELS")) {
    if (std::string_view(forced) == "scalar") return scalar_table();
  }
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace volterra::kernels
