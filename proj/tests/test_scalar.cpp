#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilherm/scalar.hpp"

using namespace nilherm;

TEST_CASE("parse_rational accepts p/q, integers and decimals") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("0") == Rational(0));
    CHECK(parse_rational("12") == Rational(12));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("1.5") == Rational(3, 2));
    CHECK(parse_rational(" 2/6 ") == Rational(1, 3));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("2.5e2") == Rational(250));
}

TEST_CASE("parse_rational rejects malformed input") {
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_rational("--1"), ParseError);
    CHECK_THROWS_AS(parse_rational("1i"), ParseError);
}

TEST_CASE("exact complex field operations") {
    ExactComplex i = ExactComplex::i();
    CHECK(i * i == -ExactComplex::one());
    ExactComplex z{Rational(1, 2), Rational(-3, 4)};
    CHECK(z + z.conj() == ExactComplex(Rational(1)));
    CHECK(z * z.conj() == ExactComplex(z.norm_sq()));
    CHECK(z / z == ExactComplex::one());
    CHECK_THROWS_AS(z / ExactComplex::zero(), std::domain_error);
    CHECK(to_string(z) == "1/2-3/4i");
    CHECK(to_string(ExactComplex{Rational(0), Rational(1)}) == "i");
}

TEST_CASE("rational_from_double is exact on dyadic values") {
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK(rational_from_double(-0.75) == Rational(-3, 4));
    CHECK(rational_from_double(3.0) == Rational(3));
    // 0.1 is not 1/10 in binary; the conversion reflects the actual bits
    Rational r = rational_from_double(0.1);
    CHECK(r != Rational(1, 10));
    CHECK(static_cast<double>(r) == 0.1);
}

TEST_CASE("rational_sqrt of perfect squares") {
    CHECK(rational_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(rational_sqrt(Rational(0)) == Rational(0));
    CHECK(rational_sqrt(Rational(1)) == Rational(1));
    CHECK(!rational_sqrt(Rational(2)));
    CHECK(!rational_sqrt(Rational(4, 3)));
    CHECK(!rational_sqrt(Rational(-1)));
}

TEST_CASE("rationalize snaps near-rationals") {
    CHECK(rationalize(0.5, 1000000) == Rational(1, 2));
    CHECK(rationalize(0.333333333333, 1000) == Rational(1, 3));
    CHECK(rationalize(-2.0, 1000000) == Rational(-2));
    CHECK(rationalize(0.0, 10) == Rational(0));
    // denominator cap respected
    Rational r = rationalize(1.0 / 1234567.0, 1000);
    CHECK(boost::multiprecision::denominator(r) <= 1000);
}

TEST_CASE("scalar mode discipline") {
    Scalar a = Scalar::exact(ExactComplex::one());
    Scalar b = Scalar::floating({1.0, 0.0});
    CHECK_THROWS_AS(a + b, ModeError);
    CHECK_THROWS_AS(a == b, ModeError);
    CHECK_THROWS_AS(a.float_value(), ModeError);
    CHECK_THROWS_AS(b.exact_value(), ModeError);
    CHECK(a.to_float().mode() == ScalarMode::Floating);
    CHECK((a.to_float() + b).float_value() == std::complex<double>{2.0, 0.0});
    CHECK(Scalar::exact(ExactComplex{Rational(1, 2), Rational(1)}).norm_sq() ==
          Scalar::exact(ExactComplex(Rational(5, 4))));
}
