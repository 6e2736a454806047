// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and sizes are fixed here; do not loosen them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "volterra/builtins.hpp"
#include "volterra/inversion.hpp"

using namespace volterra;
namespace t = volterra::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// AC1: at (e1, e2) the pair value is -1 + 2 = 1.
Outcome ac1() {
  const VolterraOperator v = example32();
  const SparsePoint e1 = vertex(1), e2 = vertex(2);
  const auto start = Clock::now();
  const double value = pair_condition_value(v, e1, e2);
  const double elapsed = seconds_since(start);
  const bool ok = std::abs(value - 1.0) <= 1e-12 && elapsed < 1e-3;
  return {ok, fmt("value=%.17g runtime=%.3gms (limit 1ms)", value, elapsed * 1e3)};
}

// AC2: normalisation and W-telescoping for example32.
Outcome ac2() {
  t::Rng rng(2002);
  const VolterraOperator v = example32();
  const auto start = Clock::now();
  double worst_sum = 0.0, worst_tele = 0.0, worst_oracle = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const SparsePoint x = t::random_point(rng, 100, 200);
    const SparsePoint y = apply(v, x);
    worst_sum = std::max(worst_sum, std::abs(y.total() - 1.0));
    for (Index k = 1; k <= x.max_index() + 1; ++k) {
      worst_tele = std::max(worst_tele, std::abs(telescoping_w(k, x) - y[k] - telescoping_w(k + 1, x)));
    }
    if (s % 10 == 0) {
      const auto direct = t::example32_direct(t::dense(x, x.max_index()));
      for (Index k = 1; k <= x.max_index(); ++k) worst_oracle = std::max(worst_oracle, std::abs(direct[k] - y[k]));
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst_sum <= 1e-12 && worst_tele <= 1e-12 && worst_oracle <= 1e-12 && elapsed < 5.0;
  return {ok, fmt("max|sum-1|=%.3g max|telescoping|=%.3g max|oracle|=%.3g runtime=%.3gs (limit 5s)", worst_sum,
                  worst_tele, worst_oracle, elapsed)};
}

// AC3: invert_triangular(apply(x)) recovers x.
Outcome ac3() {
  t::Rng rng(3003);
  const VolterraOperator v = example32();
  const auto start = Clock::now();
  double worst = 0.0;
  int failures = 0;
  for (int s = 0; s < 1000; ++s) {
    const SparsePoint x = t::random_point(rng, 50, 100);
    try {
      worst = std::max(worst, l1_distance(invert_triangular(apply(v, x)).preimage, x));
    } catch (const Error&) {
      ++failures;
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = failures == 0 && worst <= 1e-9 && elapsed < 10.0;
  return {ok, fmt("max l1=%.3g failures=%d runtime=%.3gs (limit 10s)", worst, failures, elapsed)};
}

// AC4: example31 satisfies the pair condition; analytic value -sum (x_i - y_i)^2.
Outcome ac4() {
  const VolterraOperator v = example31_operator();
  t::Rng rng(4004);
  double worst_max = -1e300;
  std::size_t evaluated = 0;
  for (std::size_t size : {2u, 5u, 10u, 20u}) {
    const FaceSpec face = size == 20 ? FaceSpec::range(1, 20) : t::random_face(rng, size, 40);
    const PairReport r = check_pair_condition(v, face, 10000, 40 + size);
    worst_max = std::max(worst_max, r.max_value);
    evaluated += r.evaluated;
  }
  double worst_oracle = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const SparsePoint x = t::random_point(rng, 20, 20);
    const SparsePoint y = t::random_point(rng, 20, 20);
    const auto dx = t::dense(x, 20), dy = t::dense(y, 20);
    double expected = 0.0;
    for (Index i = 1; i <= 20; ++i) expected -= (dx[i] - dy[i]) * (dx[i] - dy[i]);
    worst_oracle = std::max(worst_oracle, std::abs(pair_condition_value(v, x, y) - expected));
  }
  const bool ok = worst_max <= 1e-12 && worst_oracle <= 1e-12;
  return {ok, fmt("max pair value=%.3g over %zu pairs, max|oracle|=%.3g", worst_max, evaluated, worst_oracle)};
}

double dense_quadratic_form(const std::vector<MatrixEntry>& b, const SparsePoint& x) {
  double s = 0.0;
  for (const auto& e : b) s += x[e.row] * e.value * x[e.col];
  return s;
}

// AC5: skew matrices balance and satisfy the pair condition; non-skew
// matrices have a concrete condition-3 witness.
Outcome ac5() {
  t::Rng rng(5005);
  double worst_balance = 0.0, worst_pair = -1e300;
  for (int m = 0; m < 100; ++m) {
    const Index n = 1 + m % 10;
    const auto raw = t::random_skew(rng, n);
    const VolterraOperator op = quadratic_operator(validate_matrix(raw));
    const FaceSpec face = FaceSpec::range(1, n);
    for (int s = 0; s < 1000; ++s) {
      const SparsePoint x = sample_face(face, derive_seed(m, s));
      const auto f = op.map.on_support(x);
      double bal = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) bal += x.masses()[i] * f[i];
      worst_balance = std::max(worst_balance, std::abs(bal));
    }
    worst_pair = std::max(worst_pair, check_pair_condition(op, face, 1000, m).max_value);
  }

  int missing = 0;
  double weakest = 1e300;
  for (int m = 0; m < 100; ++m) {
    const auto raw = t::random_nonskew(rng, 1 + m % 10);
    const auto w = symmetry_defect_witness(raw);
    if (!w) {
      ++missing;
      continue;
    }
    weakest = std::min(weakest, std::abs(dense_quadratic_form(raw, w->point)));
  }
  const bool ok = worst_balance <= 1e-12 && worst_pair <= 1e-12 && missing == 0 && weakest > 1e-9;
  return {ok, fmt("(a) max|balance|=%.3g max pair=%.3g  (b) witnesses=%d/100 min|x^T B x|=%.3g", worst_balance,
                  worst_pair, 100 - missing, weakest)};
}

// AC6: canonical form against the brute-force ordered triple sum.
Outcome ac6() {
  t::Rng rng(6006);
  double worst = 0.0, worst_oracle = 0.0;
  for (int m = 0; m < 100; ++m) {
    const Index n = 1 + m % 6;
    const auto raw = t::random_volterra_tensor(rng, n);
    const CubicTensor p = validate_tensor(raw);
    const CanonicalCubicCoeffs c = tensor_to_canonical(p);
    for (int s = 0; s < 100; ++s) {
      const SparsePoint x = t::random_point(rng, n, n);
      const SparsePoint brute = cubic_apply(p, x);
      const SparsePoint canon = canonical_apply(c, x);
      const auto oracle = t::triple_sum_oracle(raw, t::dense(x, n));
      for (Index k = 1; k <= n; ++k) {
        worst = std::max(worst, std::abs(brute[k] - canon[k]));
        worst_oracle = std::max(worst_oracle, std::abs(brute[k] - oracle[k]));
      }
    }
  }
  const bool ok = worst <= 1e-12 && worst_oracle <= 1e-12;
  return {ok, fmt("max|cubic-canonical|=%.3g max|cubic-oracle|=%.3g", worst, worst_oracle)};
}

// AC7: example31 tensor form against x_k (1 + x_k - sum x_i^2).
Outcome ac7() {
  const CubicTensor p = example31_tensor(10);
  t::Rng rng(7007);
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const SparsePoint x = t::random_point(rng, 10, 10);
    const auto expected = t::example31_direct(t::dense(x, 10));
    const SparsePoint y = cubic_apply(p, x);
    for (Index k = 1; k <= 10; ++k) worst = std::max(worst, std::abs(y[k] - expected[k]));
  }
  return {worst <= 1e-12, fmt("max|tensor - f-form|=%.3g", worst)};
}

// AC8: vertices fixed exactly and faces invariant.
Outcome ac8() {
  struct Case {
    VolterraOperator op;
    std::vector<Index> vertices;
    Index universe;
  };
  std::vector<Case> cases{
      {identity_operator(), {1, 2, 7, 100}, 12},
      {example31_operator(), {1, 2, 7, 100}, 12},
      {example32(), {1, 2, 7, 100}, 12},
      {sine_example(), {1, 2}, 2},
      {cubic_operator(example31_tensor(6)), {1, 2, 3, 4, 5, 6}, 6},
  };
  t::Rng rng(8008);
  for (int m = 0; m < 100; ++m) {
    // even m: skew quadratic on {1..10}; odd m: random cubic Volterra tensor on {1..6}
    const Index n = m % 2 == 0 ? 1 + m % 10 : 1 + m % 6;
    std::vector<Index> vs;
    for (Index k = 1; k <= n; ++k) vs.push_back(k);
    if (m % 2 == 0) {
      cases.push_back({quadratic_operator(validate_matrix(t::random_skew(rng, n))), vs, n});
    } else {
      cases.push_back({cubic_operator(validate_tensor(t::random_volterra_tensor(rng, n))), vs, n});
    }
  }

  int vertex_failures = 0, face_failures = 0, checked = 0;
  for (const auto& c : cases) {
    for (Index k : c.vertices) {
      if (!(apply(c.op, vertex(k)) == vertex(k))) ++vertex_failures;
    }
    for (int s = 0; s < 100; ++s, ++checked) {
      const SparsePoint x = t::random_point(rng, c.universe, c.universe);
      const SparsePoint y = apply(c.op, x);
      if (!std::ranges::includes(x.indices(), y.indices())) ++face_failures;
    }
  }
  return {vertex_failures == 0 && face_failures == 0,
          fmt("%zu operators (5 builtin + 100 random), vertex failures=%d, face failures=%d/%d", cases.size(),
              vertex_failures, face_failures, checked)};
}

// AC9: the sine map breaks condition 4 at x1 = 1/2 and is not injective.
Outcome ac9() {
  const VolterraOperator s = sine_example();
  CheckOptions o;
  o.samples = 1000;
  const ConditionReport r = check_conditions(s, FaceSpec{1, 2}, o);
  const bool fails4 = !r.interior.pass && r.interior.witness && std::abs((*r.interior.witness)[1] - 0.5) < 1e-3;
  const SparsePoint a = apply(s, make_point({{1, 0.5}, {2, 0.5}}));
  const SparsePoint b = apply(s, vertex(2));
  const double da = l1_distance(a, vertex(2)), db = l1_distance(b, vertex(2));
  const bool collide = da <= 1e-12 && db <= 1e-12;
  return {fails4 && collide,
          fmt("condition 4 %s, witness x1=%.6g, worst f=%.6g; |V(1/2,1/2)-e2|=%.3g |V(e2)-e2|=%.3g",
              r.interior.pass ? "passes" : "fails", r.interior.witness ? (*r.interior.witness)[1] : -1.0,
              r.interior.worst_value, da, db)};
}

// AC10: fixed-point inversion of random skew quadratic operators.
Outcome ac10() {
  t::Rng rng(1010);
  int recovered = 0, reported = 0, silent = 0;
  double worst_residual_reported = 0.0;
  for (int m = 0; m < 100; ++m) {
    const Index n = 1 + m % 10;
    const VolterraOperator op = quadratic_operator(validate_matrix(t::random_skew(rng, n)));
    const SparsePoint x = t::random_point(rng, n, n);
    const SparsePoint y = apply(op, x);
    try {
      const InversionResult r = invert_fixed_point(op, y);
      if (l1_distance(r.preimage, x) <= 1e-8) {
        ++recovered;
      } else {
        ++silent;
      }
    } catch (const InversionError& e) {
      if (e.code() == ErrorCode::NonConvergence && e.best().residual > 0.0) ++reported;
      worst_residual_reported = std::max(worst_residual_reported, e.best().residual);
    }
  }
  const bool ok = recovered >= 95 && silent == 0 && recovered + reported == 100;
  return {ok, fmt("recovered=%d/100 (need 95) reported NonConvergence=%d silent wrong=%d", recovered, reported,
                  silent)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1  pair condition value at (e1, e2) for example32", ac1},
      {"AC2  example32 normalisation and W-telescoping", ac2},
      {"AC3  example32 triangular inversion round trip", ac3},
      {"AC4  example31 pair condition", ac4},
      {"AC5  quadratic skew characterisation", ac5},
      {"AC6  cubic canonical form equivalence", ac6},
      {"AC7  example31 dual-form identity", ac7},
      {"AC8  vertex fixity and face invariance", ac8},
      {"AC9  sine counterexample", ac9},
      {"AC10 fixed-point inverter", ac10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
