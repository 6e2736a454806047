#include "volterra/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "volterra/kernels.hpp"

namespace volterra {

namespace {

std::string triple_name(const Triple& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

[[noreturn]] void undefined(const Triple& t) {
  throw Error(ErrorCode::UndefinedTriple, "no coefficients for triple " + triple_name(t));
}

void require_support_within(const std::vector<Index>& known, const SparsePoint& x) {
  for (Index k : x.indices()) {
    if (!std::binary_search(known.begin(), known.end(), k)) {
      throw Error(ErrorCode::DomainViolation,
                  "index " + std::to_string(k) + " is outside the tensor's indices");
    }
  }
}

double lookup(const std::map<Index, double>& m, Index key, const Triple& t) {
  auto it = m.find(key);
  if (it == m.end()) undefined(t);
  return it->second;
}

}  // namespace

Triple sorted_triple(Index i, Index j, Index l) noexcept {
  Triple t{i, j, l};
  std::sort(t.begin(), t.end());
  return t;
}

// ---------------------------------------------------------------------------
// CubicTensor

const Distribution* CubicTensor::find(const Triple& sorted) const noexcept {
  auto it = coefficients_.find(sorted);
  return it == coefficients_.end() ? nullptr : &it->second;
}

CubicTensor validate_tensor(const std::vector<RawTriple>& raw) {
  CubicTensor p;
  std::set<Index> seen;
  for (const auto& entry : raw) {
    const Triple t = sorted_triple(entry.triple[0], entry.triple[1], entry.triple[2]);
    if (t[0] == 0) throw Error(ErrorCode::InvalidIndex, "tensor indices are 1-based");
    Distribution dist;
    double total = 0.0;
    for (const auto& [k, value] : entry.outputs) {
      if (k == 0) throw Error(ErrorCode::InvalidIndex, "tensor indices are 1-based");
      if (!(value >= 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "p_" << triple_name(t) << "," << k << " = " << value;
        throw Error(ErrorCode::NegativeCoefficient, msg.str());
      }
      if (!dist.emplace(k, value).second) {
        throw Error(ErrorCode::MalformedInput,
                    "output " + std::to_string(k) + " repeated for triple " + triple_name(t));
      }
      total += value;
    }
    if (!(std::abs(total - 1.0) <= kTensorTolerance)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "outputs of " << triple_name(t) << " sum to " << total << " (deviation " << total - 1.0
          << ")";
      throw Error(ErrorCode::RowSumViolation, msg.str());
    }
    std::erase_if(dist, [](const auto& kv) { return kv.second == 0.0; });

    auto [it, inserted] = p.coefficients_.emplace(t, dist);
    if (!inserted) {
      const Distribution& prior = it->second;
      std::set<Index> keys;
      for (const auto& kv : prior) keys.insert(kv.first);
      for (const auto& kv : dist) keys.insert(kv.first);
      for (Index k : keys) {
        const double a = prior.count(k) ? prior.at(k) : 0.0;
        const double b = dist.count(k) ? dist.at(k) : 0.0;
        if (std::abs(a - b) > kTensorTolerance) {
          std::ostringstream msg;
          msg << "orderings of " << triple_name(t) << " disagree at output " << k << ": " << a
              << " vs " << b;
          throw Error(ErrorCode::PermutationInconsistency, msg.str());
        }
      }
    }
    seen.insert(t.begin(), t.end());
    for (const auto& kv : dist) seen.insert(kv.first);
  }
  p.indices_.assign(seen.begin(), seen.end());
  for (Index i : p.indices_) p.coefficients_.try_emplace(Triple{i, i, i}, Distribution{{i, 1.0}});
  return p;
}

std::optional<VolterraOffender> volterra_offender(const CubicTensor& p) {
  for (const auto& [t, dist] : p.coefficients()) {
    for (const auto& [k, value] : dist) {
      if (value > 0.0 && k != t[0] && k != t[1] && k != t[2]) return VolterraOffender{t, k};
    }
  }
  return std::nullopt;
}

SparsePoint cubic_apply(const CubicTensor& p, const SparsePoint& x) {
  require_support_within(p.indices(), x);
  const auto s = x.indices();
  const auto m = x.masses();
  const std::size_t n = s.size();

  // Resolve each unordered triple once; the sum itself runs over ordered ones.
  std::vector<const Distribution*> table(n * n * n, nullptr);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      for (std::size_t c = b; c < n; ++c) {
        const Triple t{s[a], s[b], s[c]};
        const Distribution* d = p.find(t);
        if (!d) undefined(t);
        const std::size_t perms[6][3] = {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
        for (const auto& q : perms) table[(q[0] * n + q[1]) * n + q[2]] = d;
      }
    }
  }

  std::map<Index, double> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        const double w = m[a] * m[b] * m[c];
        for (const auto& [k, value] : *table[(a * n + b) * n + c]) out[k] += value * w;
      }
    }
  }
  std::vector<Index> ks;
  std::vector<double> vs;
  for (const auto& [k, v] : out) {
    ks.push_back(k);
    vs.push_back(v);
  }
  return SparsePoint::from_image(ks, vs);
}

// ---------------------------------------------------------------------------
// Canonical form

CanonicalCubicCoeffs tensor_to_canonical(const CubicTensor& p) {
  if (auto off = volterra_offender(p)) {
    throw Error(ErrorCode::NotVolterra, "p_" + triple_name(off->triple) + "," +
                                            std::to_string(off->output) + " > 0 outside the triple");
  }
  CanonicalCubicCoeffs c;
  c.indices = p.indices();
  auto prob = [](const Distribution& d, Index k) {
    auto it = d.find(k);
    return it == d.end() ? 0.0 : it->second;
  };
  for (const auto& [t, dist] : p.coefficients()) {
    const auto [a, b, d] = t;
    if (a == b && b == d) {
      c.outputs[a];
    } else if (a == b || b == d) {
      // (r, r, s) up to order: r repeated, s single.
      const Index r = b;
      const Index s = (a == b) ? d : a;
      c.outputs[s].ii[r] = prob(dist, s);
      c.outputs[r].kk[s] = prob(dist, r);
    } else {
      c.outputs[a].ij[{b, d}] = prob(dist, a);
      c.outputs[b].ij[{a, d}] = prob(dist, b);
      c.outputs[d].ij[{a, b}] = prob(dist, d);
    }
  }
  return c;
}

std::vector<double> canonical_bracket(const CanonicalCubicCoeffs& c, const SparsePoint& x,
                                      std::span<const Index> ks) {
  require_support_within(c.indices, x);
  const auto s = x.indices();
  const auto m = x.masses();
  const std::size_t n = s.size();

  std::vector<double> out(ks.size());
  std::vector<double> others;      // x_i, i in support, i != k
  std::vector<double> others_sq;   // x_i^2
  std::vector<double> kk, ii;
  std::vector<double> cross;       // upper-triangular block of p_{ijk,k}
  std::vector<double> cross_x;
  others.reserve(n);
  for (std::size_t r = 0; r < ks.size(); ++r) {
    const Index k = ks[r];
    auto found = c.outputs.find(k);
    if (found == c.outputs.end()) {
      throw Error(ErrorCode::DomainViolation, "index " + std::to_string(k) + " unknown to the tensor");
    }
    const CanonicalOutput& o = found->second;
    others.clear();
    others_sq.clear();
    kk.clear();
    ii.clear();
    const double xk = x[k];
    std::vector<Index> rest;
    for (std::size_t a = 0; a < n; ++a) {
      if (s[a] == k) continue;
      rest.push_back(s[a]);
      others.push_back(m[a]);
      others_sq.push_back(m[a] * m[a]);
      // p_{ikk,k} only matters when x_k > 0
      kk.push_back(xk == 0.0 ? 0.0 : lookup(o.kk, s[a], sorted_triple(s[a], k, k)));
      ii.push_back(lookup(o.ii, s[a], sorted_triple(s[a], s[a], k)));
    }
    const std::size_t q = rest.size();
    cross.assign(q * q, 0.0);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = a + 1; b < q; ++b) {
        auto it = o.ij.find({rest[a], rest[b]});
        if (it == o.ij.end()) undefined(sorted_triple(rest[a], rest[b], k));
        cross[a * q + b] = it->second;
      }
    }
    cross_x.assign(q, 0.0);
    kernels::matvec(cross, others, cross_x);

    out[r] = xk * xk + 3.0 * xk * kernels::dot(kk, others) + 3.0 * kernels::dot(ii, others_sq) +
             6.0 * kernels::dot(others, cross_x);
  }
  return out;
}

SparsePoint canonical_apply(const CanonicalCubicCoeffs& c, const SparsePoint& x) {
  const std::vector<double> bracket = canonical_bracket(c, x, x.indices());
  std::vector<double> image(x.size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = x.masses()[i] * bracket[i];
  return SparsePoint::from_image(x.indices(), image);
}

VolterraOperator cubic_operator(const CubicTensor& p) {
  auto canonical = std::make_shared<const CanonicalCubicCoeffs>(tensor_to_canonical(p));
  auto eval = [canonical](const SparsePoint& x, std::span<const Index> ks, std::span<double> out) {
    const std::vector<double> bracket = canonical_bracket(*canonical, x, ks);
    std::copy(bracket.begin(), bracket.end(), out.begin());
  };
  std::optional<FaceSpec> domain;
  if (!p.indices().empty()) domain = FaceSpec(p.indices());
  return {GeneratingMap::from_growth(eval, std::move(domain)), "cubic_tensor"};
}

// ---------------------------------------------------------------------------
// Index-independence reduction

std::optional<QuadraticTable> reduce_if_index_independent(const CubicTensor& p) {
  const auto& ids = p.indices();
  QuadraticTable q;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a; b < ids.size(); ++b) {
      const Distribution* first = nullptr;
      for (Index l : ids) {
        const Distribution* d = p.find(sorted_triple(ids[a], ids[b], l));
        if (!d) return std::nullopt;
        if (!first) {
          first = d;
          continue;
        }
        std::set<Index> keys;
        for (const auto& kv : *first) keys.insert(kv.first);
        for (const auto& kv : *d) keys.insert(kv.first);
        for (Index k : keys) {
          const double u = first->count(k) ? first->at(k) : 0.0;
          const double v = d->count(k) ? d->at(k) : 0.0;
          if (std::abs(u - v) > kTensorTolerance) return std::nullopt;
        }
      }
      q[{ids[a], ids[b]}] = *first;
    }
  }
  return q;
}

SparsePoint quadratic_table_apply(const QuadraticTable& q, const SparsePoint& x) {
  const auto s = x.indices();
  const auto m = x.masses();
  std::map<Index, double> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      auto it = q.find({std::min(s[a], s[b]), std::max(s[a], s[b])});
      if (it == q.end()) {
        throw Error(ErrorCode::UndefinedTriple, "no quadratic coefficients for (" +
                                                    std::to_string(s[a]) + "," + std::to_string(s[b]) + ")");
      }
      for (const auto& [k, value] : it->second) out[k] += value * m[a] * m[b];
    }
  }
  std::vector<Index> ks;
  std::vector<double> vs;
  for (const auto& [k, v] : out) {
    ks.push_back(k);
    vs.push_back(v);
  }
  return SparsePoint::from_image(ks, vs);
}

}  // namespace volterra
