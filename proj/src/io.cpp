#include "volterra/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "volterra/builtins.hpp"

namespace volterra::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

Index parse_index(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  Index value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || value == 0) {
    malformed("'" + std::string(text) + "' is not a positive index");
  }
  return value;
}

Index index_from_json(const json& j) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) malformed("expected a positive integer index, got " + j.dump());
  return j.get<Index>();
}

double number_from_json(const json& j) {
  if (!j.is_number()) malformed("expected a number, got " + j.dump());
  return j.get<double>();
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) malformed(std::string("missing field '") + name + "'");
  return j.at(name);
}

json witness_json(const std::optional<SparsePoint>& x) { return x ? to_json(*x) : json(nullptr); }

}  // namespace

// ---------------------------------------------------------------------------
// points, matrices, tensors

json to_json(const SparsePoint& x) {
  json j = json::object();
  for (std::size_t i = 0; i < x.size(); ++i) j[std::to_string(x.indices()[i])] = x.masses()[i];
  return j;
}

SparsePoint point_from_json(const json& j) {
  if (!j.is_object()) malformed("a point is a JSON object mapping indices to masses");
  std::vector<std::pair<Index, double>> entries;
  for (const auto& [key, value] : j.items()) entries.emplace_back(parse_index(key), number_from_json(value));
  return make_point(std::move(entries));
}

std::vector<MatrixEntry> matrix_from_json(const json& j) {
  if (!j.is_array()) malformed("a matrix is a JSON list of [k, i, value] triples");
  std::vector<MatrixEntry> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) malformed("matrix entry " + e.dump() + " is not [k, i, value]");
    out.push_back({index_from_json(e[0]), index_from_json(e[1]), number_from_json(e[2])});
  }
  return out;
}

json to_json(const std::vector<MatrixEntry>& entries) {
  json j = json::array();
  for (const auto& e : entries) j.push_back({e.row, e.col, e.value});
  return j;
}

std::vector<RawTriple> tensor_from_json(const json& j) {
  if (!j.is_array()) malformed("a tensor is a JSON list of {triple, outputs} records");
  std::vector<RawTriple> out;
  for (const auto& rec : j) {
    const json& t = field(rec, "triple");
    if (!t.is_array() || t.size() != 3) malformed("triple " + t.dump() + " must have three indices");
    RawTriple raw{{index_from_json(t[0]), index_from_json(t[1]), index_from_json(t[2])}, {}};
    const json& outputs = field(rec, "outputs");
    if (!outputs.is_object()) malformed("outputs must map indices to probabilities");
    for (const auto& [key, value] : outputs.items()) {
      raw.outputs.emplace_back(parse_index(key), number_from_json(value));
    }
    out.push_back(std::move(raw));
  }
  return out;
}

json to_json(const CubicTensor& p) {
  json j = json::array();
  for (const auto& [t, dist] : p.coefficients()) {
    json outputs = json::object();
    for (const auto& [k, v] : dist) outputs[std::to_string(k)] = v;
    j.push_back({{"triple", {t[0], t[1], t[2]}}, {"outputs", outputs}});
  }
  return j;
}

// ---------------------------------------------------------------------------
// reports

json to_json(const ConditionVerdict& v, const ConditionReport& report) {
  json j = {
      {"condition", v.id},
      {"verdict", v.pass ? "pass" : "fail"},
      {"worst_value", v.worst_value},
      {"witness", witness_json(v.witness)},
      {"samples", report.samples},
      {"seed", report.seed},
  };
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json to_json(const ConditionReport& report) {
  return {
      {"face", std::vector<Index>(report.face.indices().begin(), report.face.indices().end())},
      {"samples", report.samples},
      {"seed", report.seed},
      {"margin", report.margin},
      {"pass", report.all_pass()},
      {"conditions",
       {to_json(report.continuity, report), to_json(report.lower_bound, report),
        to_json(report.balance, report), to_json(report.interior, report)}},
  };
}

json to_json(const PairReport& report) {
  return {
      {"face", std::vector<Index>(report.face.indices().begin(), report.face.indices().end())},
      {"samples", report.samples},
      {"seed", report.seed},
      {"pairs_evaluated", report.evaluated},
      {"max_value", report.max_value},
      {"holds", report.holds()},
      {"witness", {{"x", to_json(report.witness_x)}, {"y", to_json(report.witness_y)}}},
  };
}

json to_json(const InversionResult& result) {
  return {
      {"preimage", to_json(result.preimage)},
      {"residual", result.residual},
      {"iterations", result.iterations},
      {"method", std::string(to_string(result.method))},
      {"converged", result.converged},
  };
}

void write_trajectory(std::ostream& out, const Trajectory& traj) {
  for (std::size_t t = 0; t < traj.points.size(); ++t) {
    out << json{{"t", t}, {"x", to_json(traj.points[t])}}.dump() << '\n';
  }
}

FaceSpec parse_face(const std::string& text) {
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const Index first = parse_index(std::string_view(text).substr(0, dots));
    const Index last = parse_index(std::string_view(text).substr(dots + 2));
    if (last < first) malformed("empty face range '" + text + "'");
    return FaceSpec::range(first, last);
  }
  std::vector<Index> ids;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    ids.push_back(parse_index(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  try {
    return FaceSpec(std::move(ids));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

// ---------------------------------------------------------------------------
// operator specs

LoadedOperator load_operator(const json& spec) {
  const json& type_field = field(spec, "type");
  if (!type_field.is_string()) malformed("operator type must be a string");
  const std::string type = type_field.get<std::string>();

  LoadedOperator loaded{identity_operator(), type, false};
  if (type == "quadratic") {
    loaded.op = quadratic_operator(validate_matrix(matrix_from_json(field(spec, "matrix"))));
  } else if (type == "cubic_tensor") {
    loaded.op = cubic_operator(validate_tensor(tensor_from_json(field(spec, "tensor"))));
  } else if (type == "example31") {
    loaded.op = example31_operator();
    if (spec.contains("tensor")) {
      const CubicTensor p = validate_tensor(tensor_from_json(spec.at("tensor")));
      tensor_to_canonical(p);  // must be Volterra
    }
  } else if (type == "example32") {
    loaded.op = example32();
    loaded.triangular = true;
  } else if (type == "sine") {
    loaded.op = sine_example();
  } else if (type == "compose") {
    const LoadedOperator outer = load_operator(field(spec, "outer"));
    const LoadedOperator inner = load_operator(field(spec, "inner"));
    loaded.op = compose(outer.op, inner.op);
  } else if (type == "convex") {
    const LoadedOperator first = load_operator(field(spec, "first"));
    const LoadedOperator second = load_operator(field(spec, "second"));
    loaded.op = convex_combination(first.op, second.op, number_from_json(field(spec, "lambda")));
  } else {
    malformed("unknown operator type '" + type + "'");
  }

  if (spec.contains("face")) {
    const json& f = spec.at("face");
    if (!f.is_array() || f.empty()) malformed("face must be a non-empty list of indices");
    std::vector<Index> ids;
    for (const auto& k : f) ids.push_back(index_from_json(k));
    loaded.op = restrict_to(loaded.op, FaceSpec(std::move(ids)));
  }
  return loaded;
}

json builtin_spec(const std::string& name, std::optional<Index> dimension) {
  if (name == "example31") {
    json j = {{"type", "example31"}};
    if (dimension) {
      j["dimension"] = *dimension;
      j["tensor"] = to_json(example31_tensor(*dimension));
    }
    return j;
  }
  if (name == "example32") return {{"type", "example32"}};
  if (name == "sine") return {{"type", "sine"}, {"face", {1, 2}}};
  malformed("unknown builtin '" + name + "' (expected example31, example32 or sine)");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed("'" + path + "': " + e.what());
  }
}

}  // namespace volterra::io
