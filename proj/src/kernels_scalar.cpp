#include <cmath>

#include "volterra/kernels.hpp"

namespace volterra::kernels {
namespace {

double sum_scalar(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double abs_diff_sum_scalar(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

void volterra_image_scalar(std::span<const double> x, std::span<const double> g, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * g[i];
}

void matvec_scalar(std::span<const double> m, std::span<const double> x, std::span<double> out) {
  const std::size_t cols = x.size();
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = dot_scalar(m.subspan(r * cols, cols), x);
  }
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{
      "scalar", sum_scalar, dot_scalar, abs_diff_sum_scalar, volterra_image_scalar, matvec_scalar,
  };
  return table;
}

}  // namespace volterra::kernels
