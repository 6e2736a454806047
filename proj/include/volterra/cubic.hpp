#pragma once

// Cubic stochastic operators
//     (Vx)_k = sum_{i,j,l} p_{ijl,k} x_i x_j x_l
// with coefficients symmetric in (i, j, l), non-negative, and summing to one
// over k. A cubic operator is Volterra iff p_{ijl,k} = 0 for k outside
// {i, j, l}; it then admits the canonical form
//     (Vx)_k = x_k ( x_k^2 + 3 x_k sum_i p_{ikk,k} x_i + 3 sum_i p_{iik,k} x_i^2
//                    + 6 sum_{i<j} p_{ijk,k} x_i x_j ),   i, j != k.

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "volterra/generating.hpp"

namespace volterra {

inline constexpr double kTensorTolerance = 1e-12;

/// Sorted index triple i <= j <= l.
using Triple = std::array<Index, 3>;
/// Output distribution k -> p_{ijl,k}.
using Distribution = std::map<Index, double>;

Triple sorted_triple(Index i, Index j, Index l) noexcept;

struct RawTriple {
  Triple triple;  // any order
  std::vector<std::pair<Index, double>> outputs;
};

class CubicTensor {
 public:
  /// Distribution of a sorted triple, or nullptr when it is undefined. An
  /// unstored (i, i, i) over a known index is filled in as {i: 1}.
  const Distribution* find(const Triple& sorted) const noexcept;

  const std::map<Triple, Distribution>& coefficients() const noexcept { return coefficients_; }
  /// Every index mentioned by a stored triple or output.
  const std::vector<Index>& indices() const noexcept { return indices_; }
  Index dimension() const noexcept { return indices_.empty() ? 0 : indices_.back(); }

 private:
  friend CubicTensor validate_tensor(const std::vector<RawTriple>& raw);
  std::map<Triple, Distribution> coefficients_;
  std::vector<Index> indices_;
};

/// Canonicalises raw triples. Throws NegativeCoefficient, RowSumViolation or
/// PermutationInconsistency (two orderings of one triple disagree).
CubicTensor validate_tensor(const std::vector<RawTriple>& raw);

struct VolterraOffender {
  Triple triple;
  Index output;
};

/// First stored (triple, k) with p > 0 and k outside the triple.
std::optional<VolterraOffender> volterra_offender(const CubicTensor& p);
inline bool is_volterra(const CubicTensor& p) { return !volterra_offender(p).has_value(); }

/// Brute-force ordered triple sum over support(x)^3. Throws UndefinedTriple
/// when a triple of the support has no coefficients, DomainViolation when
/// the support leaves the tensor's indices.
SparsePoint cubic_apply(const CubicTensor& p, const SparsePoint& x);

struct CanonicalOutput {
  std::map<Index, double> kk;                   // i -> p_{ikk,k}
  std::map<Index, double> ii;                   // i -> p_{iik,k}
  std::map<std::pair<Index, Index>, double> ij; // (i<j) -> p_{ijk,k}
};

struct CanonicalCubicCoeffs {
  std::map<Index, CanonicalOutput> outputs;
  std::vector<Index> indices;
};

/// Throws NotVolterra.
CanonicalCubicCoeffs tensor_to_canonical(const CubicTensor& p);

/// The bracket in the canonical form, i.e. 1 + f_k(x), for each k in ks.
std::vector<double> canonical_bracket(const CanonicalCubicCoeffs& c, const SparsePoint& x,
                                      std::span<const Index> ks);

/// (Vx)_k = x_k * bracket_k(x) on support(x).
SparsePoint canonical_apply(const CanonicalCubicCoeffs& c, const SparsePoint& x);

/// Volterra operator with f_k = bracket_k - 1, on the face spanned by the
/// tensor's indices. Throws NotVolterra.
VolterraOperator cubic_operator(const CubicTensor& p);

/// q_{ij,k} for i <= j.
using QuadraticTable = std::map<std::pair<Index, Index>, Distribution>;

/// If p_{ijl,k} does not depend on l over the tensor's index set, returns
/// q_{ij,k} = p_{ijl,k}; the cubic image then equals sum_{i,j} q_{ij,k} x_i x_j
/// on S.
std::optional<QuadraticTable> reduce_if_index_independent(const CubicTensor& p);

/// (Vx)_k = sum over ordered (i, j) of q_{ij,k} x_i x_j.
SparsePoint quadratic_table_apply(const QuadraticTable& q, const SparsePoint& x);

}  // namespace volterra
