#include "volterra/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "volterra/kernels.hpp"

namespace volterra {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::SumOutOfTolerance: return "SumOutOfTolerance";
    case ErrorCode::EmptyFace: return "EmptyFace";
    case ErrorCode::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::RowSumViolation: return "RowSumViolation";
    case ErrorCode::PermutationInconsistency: return "PermutationInconsistency";
    case ErrorCode::UndefinedTriple: return "UndefinedTriple";
    case ErrorCode::NotVolterra: return "NotVolterra";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// FaceSpec

FaceSpec::FaceSpec(std::vector<Index> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw Error(ErrorCode::EmptyFace, "a face needs at least one index");
  std::sort(indices_.begin(), indices_.end());
  if (indices_.front() == 0) throw Error(ErrorCode::InvalidIndex, "indices are 1-based");
  auto dup = std::adjacent_find(indices_.begin(), indices_.end());
  if (dup != indices_.end()) {
    throw Error(ErrorCode::DuplicateIndex, "index " + std::to_string(*dup) + " repeated in face");
  }
}

FaceSpec FaceSpec::range(Index first, Index last) {
  if (first == 0 || last < first) {
    throw Error(ErrorCode::InvalidIndex,
                "bad range " + std::to_string(first) + ".." + std::to_string(last));
  }
  std::vector<Index> ids;
  ids.reserve(last - first + 1);
  for (Index k = first; k <= last; ++k) ids.push_back(k);
  return FaceSpec(std::move(ids));
}

bool FaceSpec::contains(Index k) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), k);
}

bool FaceSpec::contains_all(std::span<const Index> ks) const noexcept {
  return std::all_of(ks.begin(), ks.end(), [this](Index k) { return contains(k); });
}

std::optional<FaceSpec> intersect(const FaceSpec& a, const FaceSpec& b) {
  std::vector<Index> out;
  std::set_intersection(a.indices().begin(), a.indices().end(), b.indices().begin(),
                        b.indices().end(), std::back_inserter(out));
  if (out.empty()) return std::nullopt;
  return FaceSpec(std::move(out));
}

// ---------------------------------------------------------------------------
// SparsePoint

double SparsePoint::operator[](Index k) const noexcept {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), k);
  if (it == indices_.end() || *it != k) return 0.0;
  return masses_[static_cast<std::size_t>(it - indices_.begin())];
}

bool SparsePoint::in_support(Index k) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), k);
}

double SparsePoint::total() const noexcept { return kernels::sum(masses_); }

SparsePoint SparsePoint::from_image(std::span<const Index> indices, std::span<const double> values,
                                    double negative_tolerance) {
  SparsePoint p;
  p.indices_.reserve(indices.size());
  p.masses_.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    double v = values[i];
    if (v < 0.0 && v >= -negative_tolerance) v = 0.0;
    if (v == 0.0) continue;
    p.indices_.push_back(indices[i]);
    p.masses_.push_back(v);
  }
  return p;
}

SparsePoint make_point(std::vector<std::pair<Index, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double sum = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [k, m] = entries[i];
    if (k == 0) throw Error(ErrorCode::InvalidIndex, "indices are 1-based");
    if (i > 0 && entries[i - 1].first == k) {
      throw Error(ErrorCode::DuplicateIndex, "index " + std::to_string(k) + " given twice");
    }
    if (!(m >= 0.0) || !std::isfinite(m)) {
      std::ostringstream msg;
      msg << "mass " << m << " at index " << k;
      throw Error(ErrorCode::NegativeMass, msg.str());
    }
    sum += m;
  }
  if (!(std::abs(sum - 1.0) <= kConstructionTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "masses sum to " << sum << " (deviation " << sum - 1.0 << ")";
    throw Error(ErrorCode::SumOutOfTolerance, msg.str());
  }

  SparsePoint p;
  for (const auto& [k, m] : entries) {
    if (m == 0.0) continue;
    p.indices_.push_back(k);
    p.masses_.push_back(m / sum);
  }
  // Push the residual rounding error onto the largest mass.
  auto largest = std::max_element(p.masses_.begin(), p.masses_.end());
  for (int pass = 0; pass < 2; ++pass) {
    double s = 0.0;
    for (double m : p.masses_) s += m;
    if (s == 1.0) break;
    *largest += 1.0 - s;
  }
  return p;
}

SparsePoint vertex(Index n) {
  if (n == 0) throw Error(ErrorCode::InvalidIndex, "indices are 1-based");
  return make_point({{n, 1.0}});
}

SparsePoint barycenter(const FaceSpec& face) {
  std::vector<std::pair<Index, double>> entries;
  const double w = 1.0 / static_cast<double>(face.size());
  for (Index k : face.indices()) entries.emplace_back(k, w);
  return make_point(std::move(entries));
}

bool in_relative_interior(const SparsePoint& p, const FaceSpec& face) noexcept {
  return std::ranges::equal(p.indices(), face.indices());
}

double l1_distance(const SparsePoint& p, const SparsePoint& q) noexcept {
  if (std::ranges::equal(p.indices(), q.indices())) {
    return kernels::abs_diff_sum(p.masses(), q.masses());
  }
  const auto pi = p.indices(), qi = q.indices();
  const auto pm = p.masses(), qm = q.masses();
  std::size_t a = 0, b = 0;
  double d = 0.0;
  while (a < pi.size() || b < qi.size()) {
    if (b == qi.size() || (a < pi.size() && pi[a] < qi[b])) {
      d += pm[a++];
    } else if (a == pi.size() || qi[b] < pi[a]) {
      d += qm[b++];
    } else {
      d += std::abs(pm[a++] - qm[b++]);
    }
  }
  return d;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SparsePoint sample_face(const FaceSpec& face, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<std::pair<Index, double>> entries;
  entries.reserve(face.size());
  double total = 0.0;
  for (Index k : face.indices()) {
    double e = 0.0;
    while (!(e > 1e-300)) e = exp1(rng);
    entries.emplace_back(k, e);
    total += e;
  }
  for (auto& [k, e] : entries) e /= total;
  return make_point(std::move(entries));
}

}  // namespace volterra
