#include "volterra/quadratic.hpp"

#include <cmath>
#include <sstream>

#include "volterra/kernels.hpp"

namespace volterra {

namespace {

using RawMap = std::map<std::pair<Index, Index>, double>;

RawMap collect(const std::vector<MatrixEntry>& raw) {
  RawMap m;
  for (const auto& e : raw) {
    if (e.row == 0 || e.col == 0) throw Error(ErrorCode::InvalidIndex, "matrix indices are 1-based");
    if (!std::isfinite(e.value)) throw Error(ErrorCode::MalformedInput, "non-finite coefficient");
    auto [it, inserted] = m.emplace(std::pair{e.row, e.col}, e.value);
    if (!inserted) {
      throw Error(ErrorCode::MalformedInput, "entry (" + std::to_string(e.row) + "," +
                                                 std::to_string(e.col) + ") given twice");
    }
  }
  return m;
}

std::string pair_name(Index k, Index i) {
  return "(" + std::to_string(k) + "," + std::to_string(i) + ")";
}

/// Dense evaluator over a lookup `coef(k, i)`.
template <class Coef>
Evaluator dense_linear_evaluator(Coef coef) {
  return [coef](const SparsePoint& x, std::span<const Index> ks, std::span<double> out) {
    const auto cols = x.indices();
    std::vector<double> block(ks.size() * cols.size());
    for (std::size_t r = 0; r < ks.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) block[r * cols.size() + c] = coef(ks[r], cols[c]);
    }
    kernels::matvec(block, x.masses(), out);
  };
}

}  // namespace

double SkewMatrix::operator()(Index k, Index i) const noexcept {
  if (k == i) return 0.0;
  if (k < i) {
    auto it = upper_.find({k, i});
    return it == upper_.end() ? 0.0 : it->second;
  }
  auto it = upper_.find({i, k});
  return it == upper_.end() ? 0.0 : -it->second;
}

SkewMatrix validate_matrix(const std::vector<MatrixEntry>& raw) {
  const RawMap m = collect(raw);
  SkewMatrix a;
  for (const auto& [key, value] : m) {
    const auto [k, i] = key;
    if (k == i) {
      if (std::abs(value) > kMatrixTolerance) {
        std::ostringstream msg;
        msg << "diagonal entry " << pair_name(k, i) << " = " << value;
        throw Error(ErrorCode::NotSkew, msg.str());
      }
      continue;
    }
    auto mirror = m.find({i, k});
    if (mirror != m.end() && std::abs(value + mirror->second) > kMatrixTolerance) {
      const Index lo = std::min(k, i), hi = std::max(k, i);
      std::ostringstream msg;
      msg << "a" << pair_name(lo, hi) << " = " << m.at({lo, hi}) << " but a" << pair_name(hi, lo)
          << " = " << m.at({hi, lo});
      throw Error(ErrorCode::NotSkew, msg.str());
    }
    if (std::abs(value) > 1.0 + kMatrixTolerance) {
      std::ostringstream msg;
      msg << "|a" << pair_name(k, i) << "| = " << std::abs(value) << " > 1";
      throw Error(ErrorCode::BoundViolation, msg.str());
    }
  }
  for (const auto& [key, value] : m) {
    const auto [k, i] = key;
    if (k == i) continue;
    const Index lo = std::min(k, i), hi = std::max(k, i);
    // Prefer the upper orientation when both were given.
    if (k > i && m.count({lo, hi})) continue;
    const double upper = k < i ? value : -value;
    if (upper == 0.0) continue;
    a.upper_[{lo, hi}] = std::clamp(upper, -1.0, 1.0);
    a.dimension_ = std::max(a.dimension_, hi);
  }
  return a;
}

VolterraOperator quadratic_operator(const SkewMatrix& a) {
  return {GeneratingMap(dense_linear_evaluator([a](Index k, Index i) { return a(k, i); })),
          "quadratic"};
}

VolterraOperator linear_operator(const std::vector<MatrixEntry>& raw) {
  RawMap m = collect(raw);
  return {GeneratingMap(dense_linear_evaluator([m = std::move(m)](Index k, Index i) {
            auto it = m.find({k, i});
            return it == m.end() ? 0.0 : it->second;
          })),
          "linear"};
}

std::optional<SymmetryDefect> symmetry_defect_witness(const std::vector<MatrixEntry>& raw) {
  const RawMap m = collect(raw);
  auto b = [&m](Index k, Index i) {
    auto it = m.find({k, i});
    return it == m.end() ? 0.0 : it->second;
  };
  for (const auto& [key, value] : m) {
    if (key.first == key.second && std::abs(value) > kMatrixTolerance) {
      return SymmetryDefect{vertex(key.first), value};
    }
  }
  // Smallest (i, j), i < j, in lexicographic order with b_ij + b_ji != 0.
  std::optional<std::pair<Index, Index>> offender;
  for (const auto& [key, value] : m) {
    const auto [k, i] = key;
    if (k == i) continue;
    const std::pair<Index, Index> p{std::min(k, i), std::max(k, i)};
    if (std::abs(b(p.first, p.second) + b(p.second, p.first)) > kMatrixTolerance) {
      if (!offender || p < *offender) offender = p;
    }
  }
  if (!offender) return std::nullopt;
  const auto [i, j] = *offender;
  const double value = (b(i, j) + b(j, i)) / 4.0 + (b(i, i) + b(j, j)) / 4.0;
  return SymmetryDefect{make_point({{i, 0.5}, {j, 0.5}}), value};
}

}  // namespace volterra
