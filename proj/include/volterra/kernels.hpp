#pragma once

// Dense inner-loop kernels over the gathered support of a point.
//
// Every kernel has a scalar reference implementation. Vector variants
// (currently AVX2) are compiled into separate translation units and chosen at
// runtime from the host CPU; the environment variable VOLTERRA_KERNELS=scalar
// forces the reference path. Variants may differ from the reference only by
// floating-point reassociation.

#include <cstddef>
#include <span>
#include <string_view>

namespace volterra::kernels {

struct KernelTable {
  std::string_view name;

  /// sum_i a_i
  double (*sum)(std::span<const double> a);
  /// sum_i a_i * b_i
  double (*dot)(std::span<const double> a, std::span<const double> b);
  /// sum_i |a_i - b_i|
  double (*abs_diff_sum)(std::span<const double> a, std::span<const double> b);
  /// out_i = x_i * g_i, with g_i = 1 + f_i the growth factor
  void (*volterra_image)(std::span<const double> x, std::span<const double> g, std::span<double> out);
  /// out = M x, M row-major with out.size() rows and x.size() columns.
  void (*matvec)(std::span<const double> m, std::span<const double> x, std::span<double> out);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table() noexcept;

/// Table chosen for this process (resolved once).
const KernelTable& active() noexcept;

inline double sum(std::span<const double> a) { return active().sum(a); }
inline double dot(std::span<const double> a, std::span<const double> b) { return active().dot(a, b); }
inline double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  return active().abs_diff_sum(a, b);
}
inline void volterra_image(std::span<const double> x, std::span<const double> g, std::span<double> out) {
  active().volterra_image(x, g, out);
}
inline void matvec(std::span<const double> m, std::span<const double> x, std::span<double> out) {
  active().matvec(m, x, out);
}

}  // namespace volterra::kernels
