#include "volterra/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "volterra/builtins.hpp"
#include "volterra/dynamics.hpp"
#include "volterra/inversion.hpp"
#include "volterra/io.hpp"

namespace volterra::cli {

namespace {

using io::json;

/// Exit code for a library error surfacing at the command boundary.
int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput:
    case ErrorCode::InvalidIndex:
    case ErrorCode::DuplicateIndex:
    case ErrorCode::EmptyFace:
    case ErrorCode::NegativeMass:
    case ErrorCode::SumOutOfTolerance:
      return kMalformedInput;
    case ErrorCode::NonConvergence:
    case ErrorCode::ResidualTooLarge:
      return kNonConvergence;
    default:
      return kConditionFailure;
  }
}

struct Common {
  std::string operator_file;
  std::string point_file;
  std::string face;
  std::string output;
  std::size_t samples = 1000;
  std::optional<std::uint64_t> seed;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("VOLTERRA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::MalformedInput, std::string("VOLTERRA_SEED='") + env + "' is not an integer");
    }
  }
  return 0;
}

json envelope(const std::string& command, const std::string& label) {
  return {{"tool", io::kToolName}, {"version", io::kToolVersion}, {"command", command}, {"operator", label}};
}

/// Writes to --output when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::MalformedInput, "cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit(const json& j, const std::string& path, std::ostream& out) {
  Sink sink(path, out);
  sink.get() << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volterra-type operators on the infinite-dimensional simplex", "volterra"};
  app.require_subcommand(1);
  Common c;
  double margin = 1e-9;
  double continuity_bound = 1e-3;
  std::size_t steps = 100;
  FixedPointOptions fp;
  std::string builtin_name;
  std::optional<Index> dimension;

  auto* check = app.add_subcommand("check", "Sampled check of the four validity conditions on a face");
  check->add_option("--operator", c.operator_file, "Operator spec (JSON)")->required();
  check->add_option("--face", c.face, "Face as 1..n or 1,3,7")->required();
  check->add_option("--samples", c.samples, "Interior samples")->check(CLI::PositiveNumber);
  check->add_option("--seed", c.seed, "Sampling seed (default $VOLTERRA_SEED or 0)");
  check->add_option("--margin", margin, "Margin for the strict inequality f_k > -1");
  check->add_option("--continuity-bound", continuity_bound, "Allowed response to a 1e-6 perturbation");
  check->add_option("--output", c.output, "Report file (default stdout)");

  auto* pair = app.add_subcommand("pair-check", "Sampled check of the pair condition on a face");
  pair->add_option("--operator", c.operator_file, "Operator spec (JSON)")->required();
  pair->add_option("--face", c.face, "Face as 1..n or 1,3,7")->required();
  pair->add_option("--samples", c.samples, "Sampled pairs")->check(CLI::PositiveNumber);
  pair->add_option("--seed", c.seed, "Sampling seed (default $VOLTERRA_SEED or 0)");
  pair->add_option("--output", c.output, "Report file (default stdout)");

  auto* apply_cmd = app.add_subcommand("apply", "Image of a point");
  apply_cmd->add_option("--operator", c.operator_file, "Operator spec (JSON)")->required();
  apply_cmd->add_option("--point", c.point_file, "Point (JSON)")->required();
  apply_cmd->add_option("--output", c.output, "Image file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Trajectory as JSON Lines");
  simulate->add_option("--operator", c.operator_file, "Operator spec (JSON)")->required();
  simulate->add_option("--point", c.point_file, "Start point (JSON)")->required();
  simulate->add_option("--steps", steps, "Number of steps");
  simulate->add_option("--output", c.output, "Trajectory file (default stdout)");

  auto* invert = app.add_subcommand("invert", "Preimage of a point");
  invert->add_option("--operator", c.operator_file, "Operator spec (JSON)")->required();
  invert->add_option("--point", c.point_file, "Target point (JSON)")->required();
  invert->add_option("--tol", fp.tol, "Residual tolerance (fixed-point inverter)")->check(CLI::PositiveNumber);
  invert->add_option("--max-iter", fp.max_iter, "Iteration cap (fixed-point inverter)");
  invert->add_option("--damping", fp.damping, "Initial damping in (0, 1]")->check(CLI::Range(1e-12, 1.0));
  invert->add_option("--output", c.output, "Result file (default stdout)");

  auto* builtin = app.add_subcommand("builtin", "Write the spec of a builtin operator");
  builtin->add_option("--name", builtin_name, "example31 | example32 | sine")->required();
  builtin->add_option("--dimension", dimension, "Also emit the explicit tensor (example31)");
  builtin->add_option("--output", c.output, "Spec file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kMalformedInput;
  }

  try {
    if (builtin->parsed()) {
      emit(io::builtin_spec(builtin_name, dimension), c.output, out);
      return kSuccess;
    }

    const io::LoadedOperator loaded = [&] {
      try {
        return io::load_operator(io::read_json_file(c.operator_file));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
      }
    }();
    const VolterraOperator& op = loaded.op;

    if (check->parsed()) {
      CheckOptions options;
      options.samples = c.samples;
      options.seed = resolve_seed(c.seed);
      options.margin = margin;
      options.continuity_bound = continuity_bound;
      const ConditionReport report = check_conditions(op, io::parse_face(c.face), options);
      json j = envelope("check", op.label);
      j.update(io::to_json(report));
      emit(j, c.output, out);
      return report.all_pass() ? kSuccess : kConditionFailure;
    }

    if (pair->parsed()) {
      const std::uint64_t seed = resolve_seed(c.seed);
      const PairReport report = check_pair_condition(op, io::parse_face(c.face), c.samples, seed);
      json j = envelope("pair-check", op.label);
      j.update(io::to_json(report));
      emit(j, c.output, out);
      return report.holds() ? kSuccess : kConditionFailure;
    }

    const SparsePoint point = io::point_from_json(io::read_json_file(c.point_file));

    if (apply_cmd->parsed()) {
      emit(io::to_json(apply(op, point)), c.output, out);
      return kSuccess;
    }

    if (simulate->parsed()) {
      const Trajectory traj = iterate(op, point, steps);
      Sink sink(c.output, out);
      io::write_trajectory(sink.get(), traj);
      return kSuccess;
    }

    if (invert->parsed()) {
      try {
        const InversionResult result =
            loaded.triangular ? invert_triangular(point) : invert_fixed_point(op, point, fp);
        emit(io::to_json(result), c.output, out);
        return kSuccess;
      } catch (const InversionError& e) {
        emit(io::to_json(e.best()), c.output, out);
        err << "error: " << e.what() << '\n';
        return kNonConvergence;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kMalformedInput;
}

}  // namespace volterra::cli
