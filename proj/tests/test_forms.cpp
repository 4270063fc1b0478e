#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace nilherm;
using namespace nilherm::testsupport;

namespace {

Form gen(int n, int i, bool barred = false) { return Form::generator(n, i, barred); }

Scalar one() { return Scalar::one(ScalarMode::Exact); }

}  // namespace

TEST_CASE("wedge of a generator with itself vanishes") {
    CHECK(wedge(gen(2, 1), gen(2, 1)).is_zero());
    CHECK(wedge(gen(2, 1, true), gen(2, 1, true)).is_zero());
}

TEST_CASE("wedge canonical ordering") {
    // alpha^1 ^ alpha^{1bar} is already canonical
    Form f = wedge(gen(2, 1), gen(2, 1, true));
    CHECK(f == Form::monomial(2, std::vector<int>{1}, std::vector<int>{1}, one()));
    // alpha^{1bar} ^ alpha^1 picks up the crossing sign
    Form g = wedge(gen(2, 1, true), gen(2, 1));
    CHECK(g == -f);
}

TEST_CASE("square of a (1,1)-sum: frozen expansion") {
    // (alpha^{1 1bar} + alpha^{2 2bar})^2 = -2 alpha^{12 1bar 2bar}
    Form omega(2, ScalarMode::Exact);
    omega += Form::monomial(2, std::vector<int>{1}, std::vector<int>{1}, one());
    omega += Form::monomial(2, std::vector<int>{2}, std::vector<int>{2}, one());
    Form sq = wedge(omega, omega);
    Form expected = Form::monomial(2, std::vector<int>{1, 2}, std::vector<int>{1, 2},
                                   Scalar::exact(ExactComplex(Rational(-2))));
    CHECK(sq == expected);
}

TEST_CASE("wedge agrees with the permutation-sign oracle on generator products") {
    Rng rng(2024);
    std::uniform_int_distribution<int> idx(1, 4), len(1, 4), coin(0, 1);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::pair<int, bool>> factors;
        int m = len(rng);
        for (int i = 0; i < m; ++i) factors.push_back({idx(rng), coin(rng) == 1});

        Form prod = Form::scalar_form(4, one());
        for (auto [i, barred] : factors) prod = wedge(prod, gen(4, i, barred));

        auto [sign, key] = oracle_canonicalize(factors);
        if (sign == 0) {
            CHECK(prod.is_zero());
        } else {
            REQUIRE(prod.terms().size() == 1);
            CHECK(prod.terms().begin()->first == key);
            CHECK(prod.terms().begin()->second ==
                  Scalar::exact(ExactComplex(Rational(sign))));
        }
    }
}

TEST_CASE("wedge is graded-commutative and associative") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 4;
        std::uniform_int_distribution<int> deg(0, 2);
        int p1 = deg(rng), q1 = deg(rng), p2 = deg(rng), q2 = deg(rng);
        Form a = random_homogeneous_form(rng, n, p1, q1);
        Form b = random_homogeneous_form(rng, n, p2, q2);
        Form c = random_form(rng, n, 1);
        int da = p1 + q1, db = p2 + q2;
        Form ab = wedge(a, b), ba = wedge(b, a);
        if ((da * db) % 2 == 0)
            CHECK(ab == ba);
        else
            CHECK(ab == -ba);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("project splits and reconstructs") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Form f = random_form(rng, 4, 2, 5);
        Form sum(4, ScalarMode::Exact);
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; q <= 4; ++q) sum += project(f, p, q);
        CHECK(sum == f);
    }
    CHECK(project(Form::monomial(2, std::vector<int>{1}, std::vector<int>{1}, one()), 0, 2)
              .is_zero());
}

TEST_CASE("conjugate: frozen examples and involution") {
    // conj(alpha^{1 1bar}) = -alpha^{1 1bar}
    Form f = Form::monomial(2, std::vector<int>{1}, std::vector<int>{1}, one());
    CHECK(conjugate(f) == -f);
    // conj(alpha^{12}) = alpha^{1bar 2bar}
    Form g = Form::monomial(2, std::vector<int>{1, 2}, std::vector<int>{}, one());
    CHECK(conjugate(g) ==
          Form::monomial(2, std::vector<int>{}, std::vector<int>{1, 2}, one()));
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Form h = random_form(rng, 4);
        CHECK(conjugate(conjugate(h)) == h);
    }
}

TEST_CASE("coeff_norm_sq frozen examples") {
    Form zero(2, ScalarMode::Exact);
    CHECK(coeff_norm_sq(zero) == Scalar::exact(ExactComplex::zero()));

    Form f = Form::monomial(2, std::vector<int>{1, 2}, std::vector<int>{}, one()) -
             Form::monomial(2, std::vector<int>{1}, std::vector<int>{1}, one());
    CHECK(coeff_norm_sq(f) == Scalar::exact(ExactComplex(Rational(2))));

    Form g = Form::monomial(2, std::vector<int>{1, 2}, std::vector<int>{1, 2},
                            Scalar::exact(ExactComplex(Rational(2))));
    CHECK(coeff_norm_sq(g) == Scalar::exact(ExactComplex(Rational(4))));
}

TEST_CASE("no zero coefficients are ever stored") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        Form f = random_form(rng, 3);
        Form g = f - f;
        CHECK(g.is_zero());
        CHECK(g.terms().empty());
        Form sq = wedge(f, f);
        for (const auto& [k, c] : sq.terms()) CHECK(!c.is_zero());
    }
}

TEST_CASE("mode mixing is rejected") {
    Form ex(2, ScalarMode::Exact);
    ex += Form::monomial(2, std::vector<int>{1}, std::vector<int>{}, one());
    Form fl = ex.to_float();
    CHECK_THROWS_AS(wedge(ex, fl), ModeError);
    CHECK_THROWS_AS(ex + fl, ModeError);
    CHECK(coeff_norm_sq(fl).float_value().real() == 1.0);
}
