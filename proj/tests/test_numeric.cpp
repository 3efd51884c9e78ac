#include <doctest.h>

#include "stacklab/numeric.hpp"

using namespace stacklab;

TEST_CASE("floor and ceil of rationals") {
  CHECK(floor_rational(Rational(7, 2)) == 3);
  CHECK(floor_rational(Rational(-7, 2)) == -4);
  CHECK(floor_rational(Rational(6)) == 6);
  CHECK(ceil_rational(Rational(7, 2)) == 4);
  CHECK(ceil_rational(Rational(-7, 2)) == -3);
  CHECK(ceil_rational(Rational(-6)) == -6);
}

TEST_CASE("mod_one lands in [0, 1)") {
  CHECK(mod_one(Rational(7, 2)) == Rational(1, 2));
  CHECK(mod_one(Rational(-1, 4)) == Rational(3, 4));
  CHECK(mod_one(Rational(5)) == 0);
}

TEST_CASE("parse_rational accepts num/den and bare integers only") {
  CHECK(parse_rational("1/50") == Rational(1, 50));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("0.02"), parameter_error);
  CHECK_THROWS_AS(parse_rational("1/0"), parameter_error);
  CHECK_THROWS_AS(parse_rational("a/b"), parameter_error);
  CHECK_THROWS_AS(parse_rational(""), parameter_error);
  CHECK(format_rational(parse_rational("2/4")) == "1/2");
}

TEST_CASE("decimal_string: fixed digits, round half away from zero") {
  CHECK(decimal_string(Rational(1, 3), 12) == "0.333333333333");
  CHECK(decimal_string(Rational(2, 3), 6) == "0.666667");
  CHECK(decimal_string(Rational(5, 1000), 2) == "0.01");
  CHECK(decimal_string(Rational(-5, 1000), 2) == "-0.01");
  CHECK(decimal_string(Rational(3), 4) == "3.0000");
  CHECK(decimal_string(Rational(0), 3) == "0.000");
}
