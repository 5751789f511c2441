#include "vlmc/error.hpp"
#include "vlmc/number.hpp"

#include <doctest.h>

using namespace vlmc;

TEST_CASE("decimal and fraction literals parse exactly") {
    CHECK(Number::parse("0.25") == Number::ratio(1, 4));
    CHECK(Number::parse("3/8") == Number::ratio(3, 8));
    CHECK(Number::parse("-2") == Number(-2));
    CHECK(Number::parse("1e-3") == Number::ratio(1, 1000));
    CHECK(Number::parse("2.5e2") == Number(250));
    CHECK(Number::parse("0.1/0.3") == Number::ratio(1, 3));
    CHECK(Number::parse("0.1").exact());
}

TEST_CASE("leading zeros are decimal, not octal") {
    CHECK(Number::parse("0.8") == Number::ratio(4, 5));
    CHECK(Number::parse("0.09") == Number::ratio(9, 100));
    CHECK(Number::parse("08") == Number(8));
}

TEST_CASE("malformed literals are rejected") {
    for (const char* bad : {"", "abc", "1/0", "0.5x", "1e", "--1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Number::parse(bad), Error);
    }
}

TEST_CASE("float mode rounds and stays inexact") {
    Number x = Number::parse("0.1", NumericMode::Float);
    CHECK_FALSE(x.exact());
    CHECK(x.to_double() == doctest::Approx(0.1));
    Number y = x + Number::ratio(1, 5);
    CHECK_FALSE(y.exact());
    CHECK(y.to_double() == doctest::Approx(0.3));
}

TEST_CASE("exact arithmetic and ordering") {
    Number a = Number::ratio(1, 3), b = Number::ratio(1, 6);
    CHECK(a + b == Number::ratio(1, 2));
    CHECK(a - b == b);
    CHECK(a * b == Number::ratio(1, 18));
    CHECK(a / b == Number(2));
    CHECK(a > b);
    CHECK(pow(a, 3) == Number::ratio(1, 27));
    CHECK(abs(-a) == a);
    CHECK(min(a, b) == b);
    CHECK(max(a, b) == a);
    CHECK_THROWS_AS(a / Number(0), Error);
}

TEST_CASE("rational strings are exact fractions") {
    CHECK(Number::ratio(3, 8).str() == "3/8");
    CHECK(Number(5).str() == "5");
    CHECK(Number::ratio(2, 4).str() == "1/2");
}

TEST_CASE("modes parse by name") {
    CHECK(parse_mode("rational") == NumericMode::Rational);
    CHECK(parse_mode("float") == NumericMode::Float);
    CHECK_THROWS_AS(parse_mode("double"), Error);
}
