#pragma once

// Random generators and brute-force oracles shared by the unit and
// acceptance suites. Oracles work on dense 1-based vectors and never call the
// library's evaluation paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "volterra/cubic.hpp"
#include "volterra/quadratic.hpp"
#include "volterra/simplex.hpp"

namespace volterra::testing {

using Rng = std::mt19937_64;

/// Random face of `size` distinct indices drawn from {1..universe}.
inline FaceSpec random_face(Rng& rng, std::size_t size, Index universe) {
  std::set<Index> ids;
  std::uniform_int_distribution<Index> pick(1, universe);
  while (ids.size() < size) ids.insert(pick(rng));
  return FaceSpec(std::vector<Index>(ids.begin(), ids.end()));
}

/// Random point with support size in [1, max_support] inside {1..universe}.
inline SparsePoint random_point(Rng& rng, std::size_t max_support, Index universe) {
  std::uniform_int_distribution<std::size_t> size(1, max_support);
  const FaceSpec face = random_face(rng, std::min<std::size_t>(size(rng), universe), universe);
  return sample_face(face, rng());
}

/// Dense copy x[0..n], x[0] unused.
inline std::vector<double> dense(const SparsePoint& x, Index n) {
  std::vector<double> d(n + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.indices()[i] <= n) d[x.indices()[i]] = x.masses()[i];
  }
  return d;
}

inline double dense_l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const double u = i < a.size() ? a[i] : 0.0;
    const double v = i < b.size() ? b[i] : 0.0;
    s += std::abs(u - v);
  }
  return s;
}

/// (Vx)_k of the triangular example by the defining double sums.
inline std::vector<double> example32_direct(const std::vector<double>& x) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t k = 1; k < x.size(); ++k) {
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
      lin += x[i];
      for (std::size_t j = i + 1; j < k; ++j) quad += x[i] * x[j];
    }
    out[k] = x[k] * (x[k] * x[k] + 3.0 * lin - 3.0 * quad);
  }
  return out;
}

/// x_k (1 + x_k - sum_i x_i^2).
inline std::vector<double> example31_direct(const std::vector<double>& x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t k = 1; k < x.size(); ++k) out[k] = x[k] * (1.0 + x[k] - sq);
  return out;
}

/// Ordered triple sum over {1..n}^3 from a plain lookup table of the raw input.
inline std::vector<double> triple_sum_oracle(const std::vector<RawTriple>& raw, const std::vector<double>& x) {
  std::map<Triple, std::map<Index, double>> table;
  for (const auto& r : raw) {
    Triple t = r.triple;
    std::sort(t.begin(), t.end());
    for (const auto& [k, p] : r.outputs) table[t][k] = p;
  }
  const std::size_t n = x.size() - 1;
  std::vector<double> out(x.size(), 0.0);
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= n; ++j) {
      for (Index l = 1; l <= n; ++l) {
        Triple t{i, j, l};
        std::sort(t.begin(), t.end());
        for (const auto& [k, p] : table.at(t)) {
          if (k < out.size()) out[k] += p * x[i] * x[j] * x[l];
        }
      }
    }
  }
  return out;
}

/// Uniformly random skew matrix on {1..n} with entries in [-1, 1], listed in
/// both orientations.
inline std::vector<MatrixEntry> random_skew(Rng& rng, Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<MatrixEntry> raw;
  for (Index k = 1; k <= n; ++k) {
    for (Index i = k + 1; i <= n; ++i) {
      const double a = u(rng);
      raw.push_back({k, i, a});
      raw.push_back({i, k, -a});
    }
  }
  return raw;
}

/// Dense random matrix with a nonzero symmetric part.
inline std::vector<MatrixEntry> random_nonskew(Rng& rng, Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<MatrixEntry> raw;
  for (Index k = 1; k <= n; ++k) {
    for (Index i = 1; i <= n; ++i) raw.push_back({k, i, u(rng)});
  }
  return raw;
}

/// Random Volterra tensor on {1..n}: every triple's mass lies on its members.
inline std::vector<RawTriple> random_volterra_tensor(Rng& rng, Index n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<RawTriple> raw;
  for (Index i = 1; i <= n; ++i) {
    for (Index j = i; j <= n; ++j) {
      for (Index l = j; l <= n; ++l) {
        std::set<Index> members{i, j, l};
        std::vector<std::pair<Index, double>> outs;
        double total = 0.0;
        for (Index k : members) {
          outs.emplace_back(k, e(rng));
          total += outs.back().second;
        }
        for (auto& [k, v] : outs) v /= total;
        if (members.size() == 1) outs = {{i, 1.0}};
        raw.push_back({{i, j, l}, outs});
      }
    }
  }
  return raw;
}

}  // namespace volterra::testing
