#include <doctest.h>

#include "akv/expr.hpp"

using namespace akv;

static const std::vector<std::string> kXY = {"x", "y"};

TEST_CASE("expression parsing and evaluation") {
  auto e = parse_expr("1 + x^2 * sin(y) - 3/ (x+ y)", kXY);
  Vec<double> p{2.0, 0.5};
  double want = 1 + 4 * std::sin(0.5) - 3 / 2.5;
  CHECK(e->eval(p) == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("expressions differentiate through duals") {
  auto e = parse_expr("x^2*y + cos(x)", kXY);
  Vec<D1> p{D1::seeded(1.5), D1(2.0)};
  CHECK(e->eval(p).der == doctest::Approx(2 * 1.5 * 2.0 - std::sin(1.5)).epsilon(1e-15));
}

TEST_CASE("negative integer powers and unary minus") {
  auto e = parse_expr("-x^-2", kXY);
  Vec<double> p{2.0, 0.0};
  CHECK(e->eval(p) == doctest::Approx(-0.25));
}

TEST_CASE("parse errors are reported") {
  CHECK_THROWS_AS(parse_expr("x +", kXY), Error);
  CHECK_THROWS_AS(parse_expr("foo(x)", kXY), Error);
  CHECK_THROWS_AS(parse_expr("x ^ y", kXY), Error);
  CHECK_THROWS_AS(parse_expr("(x", kXY), Error);
  CHECK_THROWS_AS(parse_expr("x y", kXY), Error);
}
