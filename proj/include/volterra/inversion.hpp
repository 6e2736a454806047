#pragma once

// Preimages under Volterra-type operators.
//
// invert_triangular solves example32 coordinate by coordinate: x_1 = y_1^(1/3)
// and, for later k, the unique root in [0, 1] of t^3 + 3 C_k t = y_k where
// C_k = sum_{i<k} x_i - sum_{i<j<k} x_i x_j >= 0.
//
// invert_fixed_point is a damped iteration x_k <- y_k / (1 + f_k(x)) on the
// support of y. It carries no convergence guarantee; failures are reported.

#include <cstddef>
#include <string_view>

#include "volterra/generating.hpp"

namespace volterra {

enum class InversionMethod { Triangular, FixedPoint };

std::string_view to_string(InversionMethod m) noexcept;

struct InversionResult {
  SparsePoint preimage;
  double residual = 0.0;  // l1 distance between apply(preimage) and the target
  std::size_t iterations = 0;
  InversionMethod method = InversionMethod::FixedPoint;
  bool converged = false;
};

/// Thrown with the best iterate when the requested residual is not reached.
class InversionError : public Error {
 public:
  InversionError(ErrorCode code, const std::string& what, InversionResult best)
      : Error(code, what), best_(std::move(best)) {}
  const InversionResult& best() const noexcept { return best_; }

 private:
  InversionResult best_;
};

/// Unique t in [0, hi] with t^3 + 3 c t = y, by bisection to `tol` in t.
/// Requires c >= 0 and 0 <= y <= hi^3 + 3 c hi.
double solve_monotone_cubic(double c, double y, double hi = 1.0, double tol = 1e-13) noexcept;

struct TriangularOptions {
  double bisection_tol = 1e-13;
  double residual_tol = 1e-10;
};

/// Exact sequential inverse of example32. Throws InversionError
/// (ResidualTooLarge) with the computed point if the forward check fails.
InversionResult invert_triangular(const SparsePoint& y, const TriangularOptions& options = {});

struct FixedPointOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  double damping = 0.5;
};

/// Throws InversionError (NonConvergence) carrying the best iterate.
InversionResult invert_fixed_point(const VolterraOperator& op, const SparsePoint& y,
                                   const FixedPointOptions& options = {});

bool verify_inverse(const VolterraOperator& op, const SparsePoint& x, const SparsePoint& y, double tol);

}  // namespace volterra
