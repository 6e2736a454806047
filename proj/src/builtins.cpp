#include "volterra/builtins.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "volterra/kernels.hpp"

namespace volterra {

// ---------------------------------------------------------------------------
// example31

VolterraOperator example31_operator() {
  auto eval = [](const SparsePoint& x, std::span<const Index> ks, std::span<double> out) {
    const double sq = kernels::dot(x.masses(), x.masses());
    for (std::size_t j = 0; j < ks.size(); ++j) out[j] = x[ks[j]] - sq;
  };
  return {GeneratingMap(eval), "example31"};
}

CubicTensor example31_tensor(Index dimension) {
  if (dimension == 0) throw Error(ErrorCode::InvalidIndex, "dimension must be at least 1");
  std::vector<RawTriple> raw;
  for (Index i = 1; i <= dimension; ++i) {
    for (Index j = i; j <= dimension; ++j) {
      for (Index l = j; l <= dimension; ++l) {
        RawTriple t{{i, j, l}, {}};
        if (i == l) {
          t.outputs = {{i, 1.0}};
        } else if (i == j) {
          t.outputs = {{i, 1.0}, {l, 0.0}};  // p_{iil,i} = 1, p_{iil,l} = 0
        } else if (j == l) {
          t.outputs = {{i, 0.0}, {l, 1.0}};
        } else {
          t.outputs = {{i, 1.0 / 3.0}, {j, 1.0 / 3.0}, {l, 1.0 / 3.0}};
        }
        raw.push_back(std::move(t));
      }
    }
  }
  return validate_tensor(raw);
}

Example31 example31(Index dimension) {
  return {example31_operator(), example31_tensor(dimension)};
}

// ---------------------------------------------------------------------------
// example32

VolterraOperator example32() {
  auto eval = [](const SparsePoint& x, std::span<const Index> ks, std::span<double> out) {
    const auto s = x.indices();
    const auto m = x.masses();
    double prefix = 0.0;  // sum_{i<k} x_i
    double pairs = 0.0;   // sum_{i<j<k} x_i x_j
    std::size_t a = 0;
    for (std::size_t r = 0; r < ks.size(); ++r) {
      while (a < s.size() && s[a] < ks[r]) {
        pairs += m[a] * prefix;
        prefix += m[a];
        ++a;
      }
      const double xk = (a < s.size() && s[a] == ks[r]) ? m[a] : 0.0;
      out[r] = xk * xk + 3.0 * prefix - 3.0 * pairs;
    }
  };
  return {GeneratingMap::from_growth(eval), "example32"};
}

double telescoping_w(Index k, const SparsePoint& x) {
  const auto s = x.indices();
  const auto m = x.masses();
  double head = 0.0;   // P
  double pairs = 0.0;  // R, i <= j
  double tail = 0.0;   // T
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] < k) {
      head += m[a];
      pairs += m[a] * head;  // x_a * (x_1 + ... + x_a)
    } else {
      tail += m[a];
    }
  }
  return tail * tail * tail + 3.0 * head * tail * tail + 3.0 * pairs * tail;
}

PrefixPositivity prefix_positivity(const SparsePoint& x, Index n) {
  if (n == 0) throw Error(ErrorCode::InvalidIndex, "n must be at least 1");
  const auto s = x.indices();
  const auto m = x.masses();
  const std::size_t count =
      static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), n) - s.begin());

  PrefixPositivity out{0.0, 0.0};
  double prefix = 0.0;
  for (std::size_t a = 0; a < count; ++a) {
    out.direct += m[a] - m[a] * prefix;
    prefix += m[a];
  }
  double suffix = 0.0;  // sum_{k<i<=n} x_i
  for (std::size_t a = count; a-- > 0;) {
    out.telescoped += (s[a] == n) ? m[a] : m[a] * (1.0 - suffix);
    suffix += m[a];
  }
  if (std::abs(out.direct - out.telescoped) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "prefix identity mismatch: " << out.direct << " vs " << out.telescoped;
    throw std::logic_error(msg.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// sine counterexample

double sin_pi(double t) noexcept {
  const double u = std::min(t, 1.0 - t);
  return std::sin(std::numbers::pi * u);
}

VolterraOperator sine_example() {
  auto eval = [](const SparsePoint& x, std::span<const Index> ks, std::span<double> out) {
    const double x1 = x[1];
    const double x2 = x[2];
    for (std::size_t j = 0; j < ks.size(); ++j) {
      if (ks[j] == 1) {
        out[j] = -sin_pi(x1);
      } else {
        // f_2 keeps sum_k x_k f_k = 0; at x_2 = 0 use the limit pi.
        out[j] = x2 > 0.0 ? x1 * sin_pi(x1) / x2 : std::numbers::pi;
      }
    }
  };
  return {GeneratingMap(eval, FaceSpec{1, 2}), "sine"};
}

}  // namespace volterra
