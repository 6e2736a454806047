#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "volterra/builtins.hpp"
#include "volterra/dynamics.hpp"
#include "volterra/inversion.hpp"
#include "volterra/io.hpp"

using namespace volterra;
using io::json;

namespace {

ErrorCode load_error(const json& spec) {
  try {
    io::load_operator(spec);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("loaded");
  return ErrorCode::MalformedInput;
}

}  // namespace

TEST_CASE("points round trip") {
  const SparsePoint x = make_point({{1, 0.25}, {7, 0.75}});
  const json j = io::to_json(x);
  CHECK(j == json{{"1", 0.25}, {"7", 0.75}});
  CHECK(io::point_from_json(j) == x);

  testing::Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const SparsePoint p = testing::random_point(rng, 10, 1000);
    // masses round-trip exactly; make_point may rescale by an ulp
    const SparsePoint back = io::point_from_json(json::parse(io::to_json(p).dump()));
    CHECK(std::ranges::equal(back.indices(), p.indices()));
    CHECK(l1_distance(back, p) <= 1e-15);
  }

  CHECK_THROWS_AS(io::point_from_json(json::array({0.5, 0.5})), Error);
  CHECK_THROWS_AS(io::point_from_json(json{{"a", 1.0}}), Error);
  CHECK_THROWS_AS(io::point_from_json(json{{"1", "x"}}), Error);
}

TEST_CASE("matrix and tensor formats") {
  const auto m = io::matrix_from_json(json::parse("[[1, 2, 0.5], [3, 1, -0.25]]"));
  REQUIRE(m.size() == 2);
  CHECK(m[1].row == 3);
  CHECK(m[1].value == -0.25);
  CHECK(io::matrix_from_json(io::to_json(m)).size() == 2);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1, 2]]")), Error);

  const auto raw = io::tensor_from_json(json::parse(R"([{"triple": [2, 1, 1], "outputs": {"1": 0.5, "2": 0.5}}])"));
  REQUIRE(raw.size() == 1);
  CHECK(raw[0].outputs.size() == 2);

  const CubicTensor p = example31_tensor(3);
  const CubicTensor back = validate_tensor(io::tensor_from_json(io::to_json(p)));
  CHECK(back.coefficients() == p.coefficients());
}

TEST_CASE("parse_face") {
  CHECK(io::parse_face("1..5") == FaceSpec::range(1, 5));
  CHECK(io::parse_face("1,3,7") == (FaceSpec{1, 3, 7}));
  CHECK(io::parse_face(" 2 , 4 ") == (FaceSpec{2, 4}));
  CHECK(io::parse_face("3") == FaceSpec{3});
  for (const char* bad : {"", "5..1", "0..3", "1,,2", "a", "1,1"}) {
    CAPTURE(bad);
    try {
      io::parse_face(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedInput);
    }
  }
}

TEST_CASE("load_operator") {
  const SparsePoint x = make_point({{1, 0.5}, {2, 0.5}});
  CHECK(apply(io::load_operator(json{{"type", "example32"}}).op, x)[1] == 0.125);
  CHECK(io::load_operator(json{{"type", "example32"}}).triangular);
  CHECK_FALSE(io::load_operator(json{{"type", "example31"}}).triangular);

  const auto q = io::load_operator(json::parse(R"({"type": "quadratic", "matrix": [[1, 2, 1.0]]})"));
  CHECK(apply(q.op, x)[1] == 0.75);

  const auto c = io::load_operator(io::builtin_spec("example31", 3));
  CHECK(apply(c.op, make_point({{1, 0.7}, {2, 0.3}}))[1] == doctest::Approx(0.784));

  const auto cubic = io::load_operator(json{{"type", "cubic_tensor"}, {"tensor", io::to_json(example31_tensor(3))}});
  CHECK(l1_distance(apply(cubic.op, x), x) <= 1e-15);

  const auto composed = io::load_operator(
      json{{"type", "compose"}, {"outer", {{"type", "example31"}}}, {"inner", {{"type", "example32"}}}});
  CHECK(l1_distance(apply(composed.op, x), apply(example31_operator(), apply(example32(), x))) <= 1e-15);

  const auto mix = io::load_operator(
      json{{"type", "convex"}, {"lambda", 0.5}, {"first", {{"type", "example32"}}}, {"second", {{"type", "quadratic"}, {"matrix", json::array()}}}});
  CHECK(apply(mix.op, x)[1] == doctest::Approx(0.5 * 0.125 + 0.5 * 0.5));

  const auto sine = io::load_operator(io::builtin_spec("sine", std::nullopt));
  CHECK(apply(sine.op, x) == vertex(2));
  CHECK_THROWS_AS(apply(sine.op, vertex(3)), Error);

  CHECK(load_error(json{{"type", "nope"}}) == ErrorCode::MalformedInput);
  CHECK(load_error(json{{"matrix", json::array()}}) == ErrorCode::MalformedInput);
  CHECK(load_error(json::parse(R"({"type": "quadratic", "matrix": [[1, 2, 0.5], [2, 1, 0.5]]})")) ==
        ErrorCode::NotSkew);
  CHECK(load_error(json::parse(R"({"type": "cubic_tensor", "tensor": [{"triple": [1, 1, 1], "outputs": {"2": 1}}]})")) ==
        ErrorCode::NotVolterra);
  CHECK(load_error(json{{"type", "convex"}, {"lambda", 2.0}, {"first", {{"type", "example32"}}}, {"second", {{"type", "example31"}}}}) ==
        ErrorCode::LambdaOutOfRange);
}

TEST_CASE("builtin specs") {
  const json e31 = io::builtin_spec("example31", 3);
  CHECK(e31["type"] == "example31");
  CHECK(e31["dimension"] == 3);
  const CubicTensor p = validate_tensor(io::tensor_from_json(e31["tensor"]));
  const CanonicalCubicCoeffs c = tensor_to_canonical(p);
  CHECK(c.outputs.at(1).kk.at(2) == 1.0);
  CHECK(c.outputs.at(1).ii.at(2) == 0.0);
  CHECK(c.outputs.at(1).ij.at({2, 3}) == doctest::Approx(1.0 / 3));

  CHECK(io::builtin_spec("example32", std::nullopt) == json{{"type", "example32"}});
  CHECK_THROWS_AS(io::builtin_spec("example99", std::nullopt), Error);
}

TEST_CASE("reports") {
  CheckOptions o;
  o.samples = 100;
  o.seed = 42;
  const json r = io::to_json(check_conditions(sine_example(), FaceSpec{1, 2}, o));
  REQUIRE(r["conditions"].size() == 4);
  bool saw4 = false;
  for (const auto& c : r["conditions"]) {
    CHECK(c["seed"] == 42);
    CHECK(c["samples"] == 100);
    CHECK(c.contains("worst_value"));
    if (c["verdict"] == "fail") CHECK(c["witness"].is_object());
    if (c["condition"] == "4") {
      saw4 = true;
      CHECK(c["verdict"] == "fail");
    }
  }
  CHECK(saw4);

  const json pr = io::to_json(check_pair_condition(example32(), FaceSpec{1, 2}, 10, 0));
  CHECK(pr["max_value"] == 1.0);
  CHECK(pr["holds"] == false);
  CHECK(pr["witness"]["x"] == json{{"1", 1.0}});
  CHECK(pr["witness"]["y"] == json{{"2", 1.0}});

  const json inv = io::to_json(invert_triangular(make_point({{1, 0.125}, {2, 0.875}})));
  CHECK(inv["method"] == "triangular");
  CHECK(inv["converged"] == true);
  CHECK(inv.contains("residual"));
  CHECK(inv.contains("iterations"));
  CHECK(inv["preimage"]["1"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("trajectory JSON lines") {
  std::ostringstream os;
  io::write_trajectory(os, iterate(example31_operator(), vertex(2), 3));
  std::istringstream is(os.str());
  std::string line;
  int t = 0;
  while (std::getline(is, line)) {
    const json rec = json::parse(line);
    CHECK(rec["t"] == t);
    CHECK(rec["x"] == json{{"2", 1.0}});
    ++t;
  }
  CHECK(t == 4);
}
