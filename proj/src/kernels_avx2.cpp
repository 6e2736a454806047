// AVX2 variants. This file is compiled with -mavx2 and must only be entered
// through the dispatch table after a CPU check.

#include <immintrin.h>

#include <cmath>

#include "volterra/kernels.hpp"

namespace volterra::kernels {

const KernelTable& avx2_table_unchecked() noexcept;

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double sum_avx2(std::span<const double> a) {
  const std::size_t n = a.size();
  const double* p = a.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(p + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += p[i];
  return s;
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i)));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += pa[i] * pb[i];
  return s;
}

double abs_diff_sum_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  // clears the sign bit
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
    acc = _mm256_add_pd(acc, _mm256_and_pd(d, mask));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::abs(pa[i] - pb[i]);
  return s;
}

void volterra_image_avx2(std::span<const double> x, std::span<const double> g, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out.data() + i,
                     _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(g.data() + i)));
  }
  for (; i < n; ++i) out[i] = x[i] * g[i];
}

void matvec_avx2(std::span<const double> m, std::span<const double> x, std::span<double> out) {
  const std::size_t cols = x.size();
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = dot_avx2(m.subspan(r * cols, cols), x);
  }
}

}  // namespace

const KernelTable& avx2_table_unchecked() noexcept {
  static const KernelTable table{
      "avx2", sum_avx2, dot_avx2, abs_diff_sum_avx2, volterra_image_avx2, matvec_avx2,
  };
  return table;
}

}  // namespace volterra::kernels
