#include "volterra/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "volterra/builtins.hpp"

namespace volterra {

std::string_view to_string(InversionMethod m) noexcept {
  return m == InversionMethod::Triangular ? "triangular" : "fixed_point";
}

namespace {

/// Rescales positive values on `indices` to unit sum.
SparsePoint normalized(std::span<const Index> indices, std::vector<double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  std::vector<std::pair<Index, double>> entries;
  entries.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) entries.emplace_back(indices[i], values[i] / total);
  return make_point(std::move(entries));
}

}  // namespace

double solve_monotone_cubic(double c, double y, double hi, double tol) noexcept {
  double lo = 0.0;
  if (y <= 0.0) return 0.0;
  auto g = [c](double t) { return t * t * t + 3.0 * c * t; };
  if (g(hi) <= y) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

InversionResult invert_triangular(const SparsePoint& y, const TriangularOptions& options) {
  const auto s = y.indices();
  const auto m = y.masses();
  std::vector<double> x(s.size(), 0.0);
  double prefix = 0.0;  // sum_{i<k} x_i
  double pairs = 0.0;   // sum_{i<j<k} x_i x_j
  for (std::size_t a = 0; a < s.size(); ++a) {
    const double c = std::max(0.0, prefix - pairs);
    x[a] = (c == 0.0) ? std::cbrt(m[a]) : solve_monotone_cubic(c, m[a], 1.0, options.bisection_tol);
    pairs += x[a] * prefix;
    prefix += x[a];
  }

  InversionResult result{normalized(s, std::move(x)), 0.0, s.size(), InversionMethod::Triangular, false};
  result.residual = l1_distance(apply_unchecked(example32(), result.preimage), y);
  result.converged = result.residual <= options.residual_tol;
  if (!result.converged) {
    std::ostringstream msg;
    msg << "forward check residual " << result.residual << " exceeds " << options.residual_tol;
    throw InversionError(ErrorCode::ResidualTooLarge, msg.str(), std::move(result));
  }
  return result;
}

InversionResult invert_fixed_point(const VolterraOperator& op, const SparsePoint& y,
                                   const FixedPointOptions& options) {
  const auto s = y.indices();
  const auto target = y.masses();
  auto residual_of = [&](const SparsePoint& x) { return l1_distance(apply_unchecked(op, x), y); };

  SparsePoint x = y;
  double current = residual_of(x);
  double lambda = options.damping;
  std::vector<double> next(s.size());

  std::size_t it = 0;
  while (it < options.max_iter) {
    ++it;
    const std::vector<double> g = op.map.growth_on_support(x);
    bool feasible = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double denom = g[i];
      if (!(denom > 0.0)) {
        feasible = false;
        break;
      }
      next[i] = (1.0 - lambda) * x.masses()[i] + lambda * target[i] / denom;
    }
    if (feasible) {
      SparsePoint candidate = normalized(s, next);
      const double r = residual_of(candidate);
      if (r <= options.tol) {
        return {std::move(candidate), r, it, InversionMethod::FixedPoint, true};
      }
      if (r <= current) {
        x = std::move(candidate);
        current = r;
        continue;
      }
    }
    lambda *= 0.5;
    if (lambda < 1e-12) break;
  }

  std::ostringstream msg;
  msg << "residual " << current << " after " << it << " iterations (tol " << options.tol << ")";
  throw InversionError(ErrorCode::NonConvergence, msg.str(),
                       {std::move(x), current, it, InversionMethod::FixedPoint, false});
}

bool verify_inverse(const VolterraOperator& op, const SparsePoint& x, const SparsePoint& y, double tol) {
  return l1_distance(apply_unchecked(op, x), y) <= tol;
}

}  // namespace volterra
