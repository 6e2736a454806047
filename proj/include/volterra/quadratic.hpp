#pragma once

// Quadratic Volterra operators: f_k(x) = sum_i a_ki x_i with a skew-symmetric
// coefficient matrix bounded by 1 in absolute value.

#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "volterra/generating.hpp"

namespace volterra {

inline constexpr double kMatrixTolerance = 1e-12;

/// One raw coefficient b_{row,col}.
struct MatrixEntry {
  Index row;
  Index col;
  double value;
};

/// Skew-symmetric matrix stored as its strict upper triangle: entry (k, i)
/// with k < i holds a_ki, and a_ik = -a_ki is implied.
class SkewMatrix {
 public:
  SkewMatrix() = default;

  /// a_ki for any pair, including the implied lower triangle and diagonal.
  double operator()(Index k, Index i) const noexcept;

  /// Largest index carrying a nonzero coefficient (0 when empty).
  Index dimension() const noexcept { return dimension_; }
  const std::map<std::pair<Index, Index>, double>& upper() const noexcept { return upper_; }

 private:
  friend SkewMatrix validate_matrix(const std::vector<MatrixEntry>& raw);
  std::map<std::pair<Index, Index>, double> upper_;
  Index dimension_ = 0;
};

/// Accepts raw coefficients in either orientation. Both orientations of a
/// pair, when given, must satisfy b_ki = -b_ik; a missing orientation is
/// inferred. Throws NotSkew or BoundViolation naming the offending entry.
SkewMatrix validate_matrix(const std::vector<MatrixEntry>& raw);

VolterraOperator quadratic_operator(const SkewMatrix& a);

/// Linear generating map f_k(x) = sum_i b_ki x_i for an arbitrary matrix
/// (no validation). Used to exhibit what goes wrong without skew-symmetry.
VolterraOperator linear_operator(const std::vector<MatrixEntry>& raw);

struct SymmetryDefect {
  SparsePoint point;
  /// x^T B x at `point`, i.e. sum_k x_k f_k(x) for the linear map of B.
  double value;
};

/// Deterministic witness that the symmetric part of B is nonzero: a vertex for
/// a nonzero diagonal entry, otherwise the uniform point on the smallest pair
/// {i, j} with b_ij + b_ji != 0. nullopt iff the symmetric part vanishes
/// within 1e-12.
std::optional<SymmetryDefect> symmetry_defect_witness(const std::vector<MatrixEntry>& raw);

}  // namespace volterra
