#pragma once

// Finite-support points of the infinite-dimensional simplex
//   S = { x in l1 : x_k >= 0, sum_k x_k = 1 }
// together with faces S_alpha, vertices e^(n) and seeded uniform sampling.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "volterra/error.hpp"

namespace volterra {

inline constexpr double kConstructionTolerance = 1e-9;

/// Finite index set alpha. Sorted, unique, non-empty, all indices >= 1.
class FaceSpec {
 public:
  explicit FaceSpec(std::vector<Index> indices);
  FaceSpec(std::initializer_list<Index> indices) : FaceSpec(std::vector<Index>(indices)) {}

  /// The face {first, first + 1, ..., last}.
  static FaceSpec range(Index first, Index last);

  std::span<const Index> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool contains(Index k) const noexcept;
  bool contains_all(std::span<const Index> ks) const noexcept;

  friend bool operator==(const FaceSpec&, const FaceSpec&) = default;

 private:
  std::vector<Index> indices_;
};

/// Intersection of two faces; nullopt if it is empty.
std::optional<FaceSpec> intersect(const FaceSpec& a, const FaceSpec& b);

/// A point of S with finite support, stored as parallel sorted index/mass
/// arrays. Every stored mass is strictly positive.
class SparsePoint {
 public:
  std::span<const Index> indices() const noexcept { return indices_; }
  std::span<const double> masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return indices_.size(); }

  /// x_k, zero off the support.
  double operator[](Index k) const noexcept;
  bool in_support(Index k) const noexcept;
  Index max_index() const noexcept { return indices_.back(); }

  /// Plain sum of the stored masses.
  double total() const noexcept;

  FaceSpec support() const { return FaceSpec(indices_); }

  /// Builds a point from already-sorted, unique index/value arrays without
  /// renormalising. Exact zeros are dropped; negatives in [-tol, 0) are
  /// clamped to zero. Used for operator images, whose sum is checked by the
  /// caller rather than repaired.
  static SparsePoint from_image(std::span<const Index> indices, std::span<const double> values,
                                double negative_tolerance = 1e-12);

  friend bool operator==(const SparsePoint&, const SparsePoint&) = default;

 private:
  friend SparsePoint make_point(std::vector<std::pair<Index, double>> entries);
  SparsePoint() = default;

  std::vector<Index> indices_;
  std::vector<double> masses_;
};

/// Validates and canonicalises a list of (index, mass) pairs: masses must be
/// non-negative and sum to 1 within kConstructionTolerance. Zero entries are
/// dropped and the rest are rescaled so the stored sum is 1 in working
/// precision.
SparsePoint make_point(std::vector<std::pair<Index, double>> entries);

/// e^(n).
SparsePoint vertex(Index n);

/// Uniform point on the face.
SparsePoint barycenter(const FaceSpec& face);

/// True iff support(p) equals the face exactly (p lies in riS_alpha).
bool in_relative_interior(const SparsePoint& p, const FaceSpec& face) noexcept;

double l1_distance(const SparsePoint& p, const SparsePoint& q) noexcept;

/// Mixes a base seed with a stream number (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Flat-Dirichlet draw on riS_alpha, deterministic in (face, seed).
SparsePoint sample_face(const FaceSpec& face, std::uint64_t seed);

}  // namespace volterra
