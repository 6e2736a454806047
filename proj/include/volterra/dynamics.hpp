#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "volterra/generating.hpp"

namespace volterra {

inline constexpr double kStepTolerance = 1e-12;
inline constexpr std::size_t kStableSteps = 10;

struct Trajectory {
  std::vector<SparsePoint> points;  // points[0] = x0
  std::string label;
  std::size_t steps = 0;
  /// Set once kStableSteps consecutive l1 steps fall below kStepTolerance.
  bool converged = false;
  std::optional<SparsePoint> limit;
};

/// Thrown when apply fails partway through a trajectory.
class IterationError : public Error {
 public:
  IterationError(const Error& cause, std::size_t step)
      : Error(cause.code(), "step " + std::to_string(step) + ": " + cause.what()), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// points[t + 1] = apply(op, points[t]), rescaled to unit sum, for t < steps. With
/// stop_when_converged the trajectory ends at the convergence step.
Trajectory iterate(const VolterraOperator& op, const SparsePoint& x0, std::size_t steps,
                   bool stop_when_converged = false);

struct FixedPointSearch {
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t max_steps = 10000;
  /// Also try the barycentre of every sub-face when the face has at most
  /// this many indices.
  std::size_t subface_limit = 12;
};

/// Verified fixed points on the face: its vertices, any sub-face barycentres
/// that are fixed, and converged limits of trajectories from sampled starts.
/// Candidates closer than 10 * tol in l1 are merged. Not exhaustive.
std::vector<SparsePoint> detect_fixed_points_on_face(const VolterraOperator& op, const FaceSpec& face,
                                                     const FixedPointSearch& search = {});

}  // namespace volterra
