#pragma once

// JSON file formats.
//
//   point        {"1": 0.5, "2": 0.5}
//   matrix       [[k, i, a_ki], ...]
//   tensor       [{"triple": [i, j, l], "outputs": {"k": p, ...}}, ...]
//   operator     {"type": "quadratic" | "cubic_tensor" | "example31" |
//                 "example32" | "sine" | "compose" | "convex", ...}
//   trajectory   JSON Lines, {"t": step, "x": point}
//
// Shape errors raise Error(MalformedInput); content is checked by the module
// validators, which raise their own codes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "volterra/cubic.hpp"
#include "volterra/dynamics.hpp"
#include "volterra/generating.hpp"
#include "volterra/inversion.hpp"
#include "volterra/quadratic.hpp"

namespace volterra::io {

using nlohmann::json;

inline constexpr const char* kToolName = "volterra";
inline constexpr const char* kToolVersion = "0.1.0";

json to_json(const SparsePoint& x);
SparsePoint point_from_json(const json& j);

std::vector<MatrixEntry> matrix_from_json(const json& j);
json to_json(const std::vector<MatrixEntry>& entries);

std::vector<RawTriple> tensor_from_json(const json& j);
json to_json(const CubicTensor& p);

json to_json(const ConditionVerdict& v, const ConditionReport& report);
json to_json(const ConditionReport& report);
json to_json(const PairReport& report);
json to_json(const InversionResult& result);

/// One JSON Lines record per trajectory point.
void write_trajectory(std::ostream& out, const Trajectory& traj);

/// Parses "1..5" or "1,3,7" (whitespace tolerated).
FaceSpec parse_face(const std::string& text);

struct LoadedOperator {
  VolterraOperator op;
  std::string type;
  /// True for specs whose exact inverse is the triangular solver (example32).
  bool triangular = false;
};

LoadedOperator load_operator(const json& spec);

/// Spec file for a builtin; example31 with a dimension also carries its
/// explicit tensor. Throws MalformedInput for unknown names.
json builtin_spec(const std::string& name, std::optional<Index> dimension);

json read_json_file(const std::string& path);

}  // namespace volterra::io
