#include "ccgeo/support/emit.hpp"
#include "ccgeo/support/exact_linalg.hpp"
#include "ccgeo/support/rational.hpp"
#include "ccgeo/support/toml_lite.hpp"
#include "doctest.h"

using namespace ccgeo;

TEST_CASE("rational parsing: fractions, integers, decimals") {
  CHECK(parse_rational("3/4") == make_rational(3, 4));
  CHECK(parse_rational("-6/8") == make_rational(-3, 4));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(parse_rational("-0.25") == make_rational(-1, 4));
  CHECK(parse_rational("1.5") == make_rational(3, 2));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("exact linear algebra: rank, solve, inverse") {
  RationalMatrix A(3, 3);
  A(0, 0) = 2;
  A(0, 1) = 1;
  A(1, 1) = make_rational(1, 3);
  A(2, 0) = 1;
  A(2, 2) = 5;
  CHECK(rank(A) == 3);

  const auto Ainv = inverse(A);
  REQUIRE(Ainv.has_value());
  CHECK((A * *Ainv) == RationalMatrix::identity(3));

  std::vector<Rational> b{Rational(1), Rational(2), Rational(3)};
  const auto x = solve(A, b);
  REQUIRE(x.has_value());
  // residual exactly zero
  for (int i = 0; i < 3; ++i) {
    Rational acc(0);
    for (int j = 0; j < 3; ++j) acc += A(i, j) * (*x)[j];
    CHECK(acc == b[i]);
  }

  RationalMatrix S(2, 2);
  S(0, 0) = 1;
  S(0, 1) = 2;
  S(1, 0) = 2;
  S(1, 1) = 4;
  CHECK(rank(S) == 1);
  CHECK_FALSE(inverse(S).has_value());
}

TEST_CASE("toml-lite parses the structure file shapes") {
  const auto root = toml::parse_toml(R"(
# comment
name = "demo"
n = 3
box = [-1.0, 1.0]
flag = true

[[field]]
components = [ [["1/2", [0, 1, 0]]], [], [["-1", [0,0,0]]] ]

[[field]]
components = [ [], [["1", [0,0,0]]], [] ]

[meta]
note = "with \"escape\""
)");
  CHECK(root->at("name")->as_string() == "demo");
  CHECK(root->at("n")->as_int() == 3);
  CHECK(root->at("box")->items()[0]->as_double() == doctest::Approx(-1.0));
  CHECK(root->at("flag")->as_bool());
  const auto& fields = root->at("field")->items();
  REQUIRE(fields.size() == 2);
  const auto& comps = fields[0]->at("components")->items();
  REQUIRE(comps.size() == 3);
  CHECK(comps[0]->items()[0]->items()[0]->as_string() == "1/2");
  CHECK(comps[1]->items().empty());
  CHECK(root->at("meta")->at("note")->as_string() == "with \"escape\"");

  CHECK_THROWS(toml::parse_toml("key = "));
  CHECK_THROWS(toml::parse_toml("[unclosed"));
  CHECK_THROWS(toml::parse_toml("a = [1, 2"));
}

TEST_CASE("deterministic json emission: 17 significant digits, stable layout") {
  Json j;
  j["b"] = 1.0 / 3.0;
  j["a"] = 42;
  j["nested"] = Json::array({1.5, Json{{"x", true}}});
  const std::string s1 = dump_deterministic(j);
  const std::string s2 = dump_deterministic(j);
  CHECK(s1 == s2);
  CHECK(s1.find("0.33333333333333331") != std::string::npos);  // %.17g
  // insertion order preserved (ordered_json)
  CHECK(s1.find("\"b\"") < s1.find("\"a\""));
}
