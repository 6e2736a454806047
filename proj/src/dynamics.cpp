#include "volterra/dynamics.hpp"

namespace volterra {

namespace {

// The raw image sums to 1 only up to rounding, and cubic maps such as example32
// triple that error every step. Rescaling keeps trajectories on S.
SparsePoint rescaled(const SparsePoint& y) {
  const double total = y.total();
  std::vector<std::pair<Index, double>> entries;
  entries.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) entries.emplace_back(y.indices()[i], y.masses()[i] / total);
  return make_point(std::move(entries));
}

}  // namespace

Trajectory iterate(const VolterraOperator& op, const SparsePoint& x0, std::size_t steps,
                   bool stop_when_converged) {
  Trajectory traj{{x0}, op.label, 0, false, std::nullopt};
  traj.points.reserve(stop_when_converged ? 64 : steps + 1);
  std::size_t quiet = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    SparsePoint next = [&] {
      try {
        return rescaled(apply(op, traj.points.back()));
      } catch (const Error& e) {
        throw IterationError(e, t + 1);
      }
    }();
    const double step = l1_distance(next, traj.points.back());
    traj.points.push_back(std::move(next));
    traj.steps = t + 1;
    quiet = step < kStepTolerance ? quiet + 1 : 0;
    if (quiet >= kStableSteps && !traj.converged) {
      traj.converged = true;
      if (stop_when_converged) break;
    }
  }
  if (traj.converged) traj.limit = traj.points.back();
  return traj;
}

std::vector<SparsePoint> detect_fixed_points_on_face(const VolterraOperator& op, const FaceSpec& face,
                                                     const FixedPointSearch& search) {
  std::vector<SparsePoint> found;
  const double radius = 10.0 * search.tol;
  auto offer = [&](const SparsePoint& x) {
    if (!is_fixed_point(op, x, search.tol)) return;
    for (const auto& f : found) {
      if (l1_distance(f, x) <= radius) return;
    }
    found.push_back(x);
  };

  for (Index k : face.indices()) offer(vertex(k));

  const auto ids = face.indices();
  if (ids.size() <= search.subface_limit) {
    const std::uint64_t subsets = std::uint64_t{1} << ids.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      if ((mask & (mask - 1)) == 0) continue;  // vertices already offered
      std::vector<Index> sub;
      for (std::size_t b = 0; b < ids.size(); ++b) {
        if (mask & (std::uint64_t{1} << b)) sub.push_back(ids[b]);
      }
      offer(barycenter(FaceSpec(std::move(sub))));
    }
  }

  for (std::size_t s = 0; s < search.starts; ++s) {
    const SparsePoint x0 = sample_face(face, derive_seed(search.seed, s));
    try {
      Trajectory traj = iterate(op, x0, search.max_steps, true);
      if (traj.limit) offer(*traj.limit);
    } catch (const Error&) {
      // a failing start says nothing about fixed points elsewhere
    }
  }
  return found;
}

}  // namespace volterra
