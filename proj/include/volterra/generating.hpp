#pragma once

// Volterra-type operators (Vx)_k = x_k (1 + f_k(x)), the sampled checkers for
// the four validity conditions and the pair condition
//     sum_k x_k f_k(y) + sum_k y_k f_k(x) <= 0,
// and the closure constructors (composition, convex combination, restriction
// to a face).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volterra/simplex.hpp"

namespace volterra {

inline constexpr double kNegativeCoordinateTolerance = 1e-12;
inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kPairConditionTolerance = 1e-12;

/// Batched evaluator of the generating functionals. Writes f_k(x) into
/// out[j] for k = ks[j]; `ks` is sorted and unique, and may include indices
/// outside the support of x.
using Evaluator =
    std::function<void(const SparsePoint& x, std::span<const Index> ks, std::span<double> out)>;

class GeneratingMap {
 public:
  explicit GeneratingMap(Evaluator eval, std::optional<FaceSpec> domain = std::nullopt);

  /// Map given through its growth factors 1 + f_k(x). Preferred when 1 + f_k
  /// has a direct formula: forming it as 1 + (f_k) loses the relative
  /// precision of small coordinates.
  static GeneratingMap from_growth(Evaluator growth, std::optional<FaceSpec> domain = std::nullopt);

  /// f_k(x) for each k in ks. Throws DomainViolation if support(x) leaves the
  /// declared domain.
  std::vector<double> evaluate(const SparsePoint& x, std::span<const Index> ks) const;
  double evaluate(Index k, const SparsePoint& x) const;

  /// f over the support of x, in support order.
  std::vector<double> on_support(const SparsePoint& x) const;

  /// 1 + f_k(x) for each k in ks.
  std::vector<double> growth(const SparsePoint& x, std::span<const Index> ks) const;
  std::vector<double> growth_on_support(const SparsePoint& x) const { return growth(x, x.indices()); }

  const std::optional<FaceSpec>& domain() const noexcept { return domain_; }
  void check_domain(const SparsePoint& x) const;

  GeneratingMap with_domain(std::optional<FaceSpec> domain) const;

 private:
  std::shared_ptr<const Evaluator> eval_;
  std::optional<FaceSpec> domain_;
  bool growth_form_ = false;  // eval_ writes 1 + f rather than f
};

struct VolterraOperator {
  GeneratingMap map;
  std::string label;
};

/// The operator with f == 0.
VolterraOperator identity_operator();

/// result_k = x_k (1 + f_k(x)) on support(x). The raw image is checked, never
/// renormalised: NegativeCoordinate below -1e-12, NormalizationFailure when
/// |sum - 1| > 1e-9.
SparsePoint apply(const VolterraOperator& op, const SparsePoint& x);

/// apply() without the normalisation check; negative coordinates still throw.
SparsePoint apply_unchecked(const VolterraOperator& op, const SparsePoint& x);

// ---------------------------------------------------------------------------
// Validity conditions

struct ConditionVerdict {
  std::string id;  // "1", "2", "3", "4"
  bool pass = true;
  double worst_value = 0.0;
  std::optional<SparsePoint> witness;
  std::string note;
};

struct ConditionReport {
  FaceSpec face;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double margin = 0.0;
  ConditionVerdict continuity;  // 1: perturbation smoke test only
  ConditionVerdict lower_bound; // 2: f_k >= -1
  ConditionVerdict balance;     // 3: sum x_k f_k = 0
  ConditionVerdict interior;    // 4: f_k > -1 on riS_face

  bool all_pass() const noexcept {
    return continuity.pass && lower_bound.pass && balance.pass && interior.pass;
  }
};

struct CheckOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  /// Strict inequality f_k > -1 is tested as f_k > -1 + margin.
  double margin = 1e-9;
  /// Perturbation radius and response bound for the continuity smoke test.
  double perturbation = 1e-6;
  double continuity_bound = 1e-3;
};

/// Evaluates conditions 2-4 on the vertices and barycentre of the face plus
/// `samples` flat-Dirichlet draws from riS_face, and condition 1 as a
/// perturbation smoke test on the drawn points.
ConditionReport check_conditions(const VolterraOperator& op, const FaceSpec& face,
                                 const CheckOptions& options = {});

/// sum_k x_k f_k(y) + sum_k y_k f_k(x) over support(x) U support(y).
double pair_condition_value(const VolterraOperator& op, const SparsePoint& x, const SparsePoint& y);

struct PairReport {
  FaceSpec face;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t evaluated = 0;
  double max_value = 0.0;
  SparsePoint witness_x;
  SparsePoint witness_y;

  bool holds() const noexcept { return max_value <= kPairConditionTolerance; }
};

/// Maximum of pair_condition_value over every vertex pair (e_i, e_j), i <= j,
/// of the face followed by `samples` sampled pairs. The first maximiser wins.
PairReport check_pair_condition(const VolterraOperator& op, const FaceSpec& face,
                                std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Closure

/// outer o inner: applies `inner` first.
VolterraOperator compose(const VolterraOperator& outer, const VolterraOperator& inner);

/// Generating map lambda f1 + (1 - lambda) f2.
VolterraOperator convex_combination(const VolterraOperator& first, const VolterraOperator& second,
                                    double lambda);

VolterraOperator restrict_to(const VolterraOperator& op, const FaceSpec& face);

bool is_fixed_point(const VolterraOperator& op, const SparsePoint& x, double tol);

}  // namespace volterra
