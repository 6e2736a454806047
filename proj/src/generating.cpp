#include "volterra/generating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "volterra/kernels.hpp"

namespace volterra {

namespace {

std::string describe(const SparsePoint& x) {
  std::ostringstream os;
  os.precision(6);
  os << '{';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x.indices()[i] << ": " << x.masses()[i];
  }
  os << '}';
  return os.str();
}

std::vector<Index> union_indices(std::span<const Index> a, std::span<const Index> b) {
  std::vector<Index> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Masses of x gathered onto the (sorted) index list ks.
std::vector<double> gather(const SparsePoint& x, std::span<const Index> ks) {
  std::vector<double> out(ks.size(), 0.0);
  const auto xi = x.indices();
  const auto xm = x.masses();
  std::size_t a = 0;
  for (std::size_t j = 0; j < ks.size() && a < xi.size(); ++j) {
    while (a < xi.size() && xi[a] < ks[j]) ++a;
    if (a < xi.size() && xi[a] == ks[j]) out[j] = xm[a];
  }
  return out;
}

std::optional<FaceSpec> merge_domains(const std::optional<FaceSpec>& a,
                                      const std::optional<FaceSpec>& b) {
  if (!a) return b;
  if (!b) return a;
  auto both = intersect(*a, *b);
  if (!both) throw Error(ErrorCode::DomainViolation, "operator domains do not overlap");
  return both;
}

}  // namespace

// ---------------------------------------------------------------------------
// GeneratingMap

GeneratingMap::GeneratingMap(Evaluator eval, std::optional<FaceSpec> domain)
    : eval_(std::make_shared<const Evaluator>(std::move(eval))), domain_(std::move(domain)) {}

void GeneratingMap::check_domain(const SparsePoint& x) const {
  if (domain_ && !domain_->contains_all(x.indices())) {
    throw Error(ErrorCode::DomainViolation, "point " + describe(x) + " leaves the operator's face");
  }
}

GeneratingMap GeneratingMap::from_growth(Evaluator growth, std::optional<FaceSpec> domain) {
  GeneratingMap m(std::move(growth), std::move(domain));
  m.growth_form_ = true;
  return m;
}

std::vector<double> GeneratingMap::evaluate(const SparsePoint& x, std::span<const Index> ks) const {
  check_domain(x);
  std::vector<double> out(ks.size(), 0.0);
  if (!ks.empty()) (*eval_)(x, ks, out);
  if (growth_form_) {
    for (double& v : out) v -= 1.0;
  }
  return out;
}

std::vector<double> GeneratingMap::growth(const SparsePoint& x, std::span<const Index> ks) const {
  check_domain(x);
  std::vector<double> out(ks.size(), 0.0);
  if (!ks.empty()) (*eval_)(x, ks, out);
  if (!growth_form_) {
    for (double& v : out) v += 1.0;
  }
  return out;
}

double GeneratingMap::evaluate(Index k, const SparsePoint& x) const {
  const Index ks[1] = {k};
  return evaluate(x, ks)[0];
}

std::vector<double> GeneratingMap::on_support(const SparsePoint& x) const {
  return evaluate(x, x.indices());
}

GeneratingMap GeneratingMap::with_domain(std::optional<FaceSpec> domain) const {
  GeneratingMap copy = *this;
  copy.domain_ = std::move(domain);
  return copy;
}

VolterraOperator identity_operator() {
  return {GeneratingMap([](const SparsePoint&, std::span<const Index>, std::span<double> out) {
            std::fill(out.begin(), out.end(), 0.0);
          }),
          "identity"};
}

// ---------------------------------------------------------------------------
// apply

SparsePoint apply_unchecked(const VolterraOperator& op, const SparsePoint& x) {
  const std::vector<double> g = op.map.growth_on_support(x);
  std::vector<double> image(x.size());
  kernels::volterra_image(x.masses(), g, image);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] < -kNegativeCoordinateTolerance || std::isnan(image[i])) {
      std::ostringstream msg;
      msg << op.label << ": (Vx)_" << x.indices()[i] << " = " << image[i] << " at x = " << describe(x);
      throw Error(ErrorCode::NegativeCoordinate, msg.str());
    }
  }
  return SparsePoint::from_image(x.indices(), image, kNegativeCoordinateTolerance);
}

SparsePoint apply(const VolterraOperator& op, const SparsePoint& x) {
  SparsePoint image = apply_unchecked(op, x);
  const double total = image.total();
  if (!(std::abs(total - 1.0) <= kNormalizationTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << op.label << ": image of " << describe(x) << " sums to " << total;
    throw Error(ErrorCode::NormalizationFailure, msg.str());
  }
  return image;
}

// ---------------------------------------------------------------------------
// check_conditions

ConditionReport check_conditions(const VolterraOperator& op, const FaceSpec& face,
                                 const CheckOptions& options) {
  ConditionReport report{face, options.samples, options.seed, options.margin, {}, {}, {}, {}};
  report.continuity = {"1", true, 0.0, std::nullopt, "perturbation smoke test, not a proof"};
  report.lower_bound = {"2", true, std::numeric_limits<double>::infinity(), std::nullopt, ""};
  report.balance = {"3", true, 0.0, std::nullopt, ""};
  report.interior = {"4", true, std::numeric_limits<double>::infinity(), std::nullopt, ""};

  const auto ks = face.indices();

  // Conditions 2 and 3 on any point of S_face; condition 4 only on riS_face.
  auto visit = [&](const SparsePoint& x, bool interior_point) {
    const std::vector<double> f = op.map.evaluate(x, ks);
    const std::vector<double> xs = gather(x, ks);
    const double fmin = *std::min_element(f.begin(), f.end());
    if (fmin < report.lower_bound.worst_value) {
      report.lower_bound.worst_value = fmin;
      report.lower_bound.witness = x;
    }
    const double balance = std::abs(kernels::dot(xs, f));
    if (balance > report.balance.worst_value || !report.balance.witness) {
      report.balance.worst_value = balance;
      report.balance.witness = x;
    }
    if (interior_point && fmin < report.interior.worst_value) {
      report.interior.worst_value = fmin;
      report.interior.witness = x;
    }
    return f;
  };

  for (Index k : ks) visit(vertex(k), face.size() == 1);
  const SparsePoint centre = barycenter(face);
  if (face.size() > 1) visit(centre, true);

  const double eps = 0.5 * options.perturbation;
  for (std::size_t s = 0; s < options.samples; ++s) {
    const SparsePoint x = sample_face(face, derive_seed(options.seed, 2 * s));
    const std::vector<double> fx = visit(x, true);

    // Move towards an independent draw by at most `perturbation` in l1.
    const SparsePoint u = sample_face(face, derive_seed(options.seed, 2 * s + 1));
    std::vector<std::pair<Index, double>> moved;
    moved.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      moved.emplace_back(x.indices()[i], (1.0 - eps) * x.masses()[i] + eps * u.masses()[i]);
    }
    const SparsePoint xp = make_point(std::move(moved));
    const std::vector<double> fxp = op.map.evaluate(xp, ks);
    const double response = kernels::abs_diff_sum(fx, fxp);
    if (response > report.continuity.worst_value || !report.continuity.witness) {
      report.continuity.worst_value = response;
      report.continuity.witness = x;
    }
  }

  report.continuity.pass = !(report.continuity.worst_value > options.continuity_bound);
  report.lower_bound.pass = report.lower_bound.worst_value >= -1.0 - 1e-12;
  report.balance.pass = report.balance.worst_value <= kNormalizationTolerance;
  report.interior.pass = report.interior.worst_value > -1.0 + options.margin;
  return report;
}

// ---------------------------------------------------------------------------
// pair condition

double pair_condition_value(const VolterraOperator& op, const SparsePoint& x, const SparsePoint& y) {
  const std::vector<Index> u = union_indices(x.indices(), y.indices());
  const std::vector<double> fx = op.map.evaluate(x, u);
  const std::vector<double> fy = op.map.evaluate(y, u);
  const std::vector<double> xs = gather(x, u);
  const std::vector<double> ys = gather(y, u);
  return kernels::dot(xs, fy) + kernels::dot(ys, fx);
}

PairReport check_pair_condition(const VolterraOperator& op, const FaceSpec& face,
                                std::size_t samples, std::uint64_t seed) {
  const auto ks = face.indices();
  PairReport report{face, samples, seed, 0, -std::numeric_limits<double>::infinity(),
                    vertex(ks[0]), vertex(ks[0])};
  auto consider = [&](const SparsePoint& x, const SparsePoint& y) {
    const double v = pair_condition_value(op, x, y);
    ++report.evaluated;
    if (v > report.max_value || std::isnan(v)) {
      report.max_value = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
      report.witness_x = x;
      report.witness_y = y;
    }
  };

  std::vector<SparsePoint> vertices;
  vertices.reserve(ks.size());
  for (Index k : ks) vertices.push_back(vertex(k));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i; j < vertices.size(); ++j) consider(vertices[i], vertices[j]);
  }
  for (std::size_t s = 0; s < samples; ++s) {
    consider(sample_face(face, derive_seed(seed, 2 * s)), sample_face(face, derive_seed(seed, 2 * s + 1)));
  }
  return report;
}

// ---------------------------------------------------------------------------
// closure

VolterraOperator compose(const VolterraOperator& outer, const VolterraOperator& inner) {
  // For x_k > 0 this is (outer(inner(x)))_k / x_k - 1; the product form also
  // covers indices off the support without dividing.
  auto eval = [outer = outer.map, inner = inner.map](const SparsePoint& x, std::span<const Index> ks,
                                                     std::span<double> out) {
    const std::vector<double> g_inner = inner.growth(x, ks);
    const SparsePoint mid = apply_unchecked(VolterraOperator{inner, "inner"}, x);
    const std::vector<double> g_outer = outer.growth(mid, ks);
    for (std::size_t j = 0; j < ks.size(); ++j) out[j] = g_inner[j] * g_outer[j];
  };
  return {GeneratingMap::from_growth(eval, merge_domains(outer.map.domain(), inner.map.domain())),
          "(" + outer.label + " o " + inner.label + ")"};
}

VolterraOperator convex_combination(const VolterraOperator& first, const VolterraOperator& second,
                                    double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "lambda = " + std::to_string(lambda));
  }
  auto eval = [a = first.map, b = second.map, lambda](const SparsePoint& x, std::span<const Index> ks,
                                                      std::span<double> out) {
    const std::vector<double> ga = a.growth(x, ks);
    const std::vector<double> gb = b.growth(x, ks);
    for (std::size_t j = 0; j < ks.size(); ++j) out[j] = lambda * ga[j] + (1.0 - lambda) * gb[j];
  };
  std::ostringstream label;
  label << lambda << "*" << first.label << " + " << 1.0 - lambda << "*" << second.label;
  return {GeneratingMap::from_growth(eval, merge_domains(first.map.domain(), second.map.domain())),
          label.str()};
}

VolterraOperator restrict_to(const VolterraOperator& op, const FaceSpec& face) {
  return {op.map.with_domain(merge_domains(op.map.domain(), face)), op.label + "|face"};
}

bool is_fixed_point(const VolterraOperator& op, const SparsePoint& x, double tol) {
  return l1_distance(apply_unchecked(op, x), x) <= tol;
}

}  // namespace volterra
