#pragma once

// Builtin operators:
//
//   example31  f_k(x) = x_k - sum_i x_i^2; the cubic Volterra operator with
//              p_{ikk,k} = 1, p_{iik,k} = 0, p_{ijk,k} = 1/3. Satisfies the
//              pair condition.
//   example32  (Vx)_k = x_k (x_k^2 + 3 sum_{i<k} x_i - 3 sum_{i<j<k} x_i x_j).
//              Bijective but violates the pair condition at (e1, e2).
//   sine       V(x)_1 = x_1 (1 - sin(pi x_1)) on the face {1, 2}. Not
//              injective; interior point x_1 = 1/2 maps to the boundary.

#include "volterra/cubic.hpp"
#include "volterra/generating.hpp"

namespace volterra {

VolterraOperator example31_operator();
CubicTensor example31_tensor(Index dimension);

struct Example31 {
  VolterraOperator op;
  CubicTensor tensor;
};
Example31 example31(Index dimension);

VolterraOperator example32();

/// Telescoping functional
///   W_k(x) = T^3 + 3 P T^2 + 3 R T,
/// T = sum_{i>=k} x_i, P = sum_{i<k} x_i, R = sum_{i<=j<k} x_i x_j,
/// with W_k = (Vx)_k + W_{k+1} for example32.
double telescoping_w(Index k, const SparsePoint& x);

struct PrefixPositivity {
  double direct;      // sum_{i<=n} x_i - sum_{i<j<=n} x_i x_j
  double telescoped;  // sum_{k<n} x_k (1 - sum_{k<i<=n} x_i) + x_n
};

/// Both sides of the identity that makes example32's coefficients
/// non-negative. Throws std::logic_error if they disagree beyond 1e-12.
PrefixPositivity prefix_positivity(const SparsePoint& x, Index n);
inline double prefix_positivity_value(const SparsePoint& x, Index n) {
  return prefix_positivity(x, n).telescoped;
}

/// sin(pi t) for t in [0, 1], exact at 0, 1/2 and 1.
double sin_pi(double t) noexcept;

VolterraOperator sine_example();

}  // namespace volterra
