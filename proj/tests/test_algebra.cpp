#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace nilherm;
using namespace nilherm::testsupport;

namespace {

const ComplexNilAlgebra& catalog(const std::string& name) {
    const CatalogEntry* e = find_catalog_entry(name);
    REQUIRE(e != nullptr);
    return e->algebra;
}

}  // namespace

TEST_CASE("construction rejects bad structure constants") {
    using Key = ComplexNilAlgebra::Key;
    CHECK_THROWS_AS(ComplexNilAlgebra(0, "bad", {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexNilAlgebra(2, "bad", {{Key{3, 1, 2}, ExactComplex(Rational(1))}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ComplexNilAlgebra(2, "bad", {{Key{2, 2, 1}, ExactComplex(Rational(1))}}, {}),
                    std::invalid_argument);  // needs r < s
    CHECK_THROWS_AS(ComplexNilAlgebra(2, "bad", {}, {{Key{2, 1, 5}, ExactComplex(Rational(1))}}),
                    std::invalid_argument);
}

TEST_CASE("validate: abelian and catalog examples") {
    CHECK(validate(ComplexNilAlgebra(2, "abelian", {}, {})).valid);
    CHECK(validate(catalog("iwasawa")).valid);
    for (const auto& e : builtin_catalog()) CHECK(validate(e.algebra).valid);
}

TEST_CASE("validate: mixed-type constants can break d^2 = 0") {
    // d alpha^2 = alpha^{1 3bar}, d alpha^3 = alpha^{12}:
    // d(d alpha^2) = -alpha^1 ^ conj(d alpha^3) = -alpha^{1 1bar 2bar} != 0
    using Key = ComplexNilAlgebra::Key;
    ComplexNilAlgebra bad(3, "bad",
                          {{Key{3, 1, 2}, ExactComplex(Rational(1))}},
                          {{Key{2, 1, 3}, ExactComplex(Rational(1))}});
    ValidationReport rep = validate(bad);
    CHECK(!rep.valid);
    CHECK(rep.generators[0].dd.is_zero());
    Form expected = Form::monomial(3, std::vector<int>{1}, std::vector<int>{1, 2},
                                   Scalar::exact(ExactComplex(Rational(-1))));
    CHECK(rep.generators[1].dd == expected);
    CHECK(rep.generators[2].dd.is_zero());
}

TEST_CASE("validate passes on the solvable fixture (d^2 = 0 does not force nilpotency)") {
    // the would-be obstruction -alpha^1 ^ d alpha^3 = -alpha^{112} dies on
    // the repeated factor
    CHECK(validate(solvable_fixture()).valid);
    CHECK_THROWS_AS(nilpotency_step(solvable_fixture()), NotNilpotentError);
}

TEST_CASE("d^2 = 0 on random forms over valid algebras") {
    Rng rng(101);
    auto algebras = assorted_valid_algebras(rng, 20);
    for (const auto& a : algebras) {
        for (int trial = 0; trial < 10; ++trial) {
            Form f = random_form(rng, a.n());
            CHECK(differential(differential(f, a), a).is_zero());
        }
    }
}

TEST_CASE("Leibniz rule on random homogeneous pairs") {
    Rng rng(103);
    auto algebras = assorted_valid_algebras(rng, 10);
    std::uniform_int_distribution<int> deg(0, 2);
    for (const auto& a : algebras) {
        for (int trial = 0; trial < 10; ++trial) {
            int p = deg(rng), q = deg(rng);
            Form f = random_homogeneous_form(rng, a.n(), p, q, 2);
            Form g = random_form(rng, a.n(), 1, 2);
            Form lhs = differential(wedge(f, g), a);
            Form rhs = wedge(differential(f, a), g);
            Form fg = wedge(f, differential(g, a));
            if ((p + q) % 2)
                rhs -= fg;
            else
                rhs += fg;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("differential: frozen Iwasawa examples") {
    const ComplexNilAlgebra& iw = catalog("iwasawa");
    CHECK(differential(Form::generator(3, 1, false), iw).is_zero());
    Form d3 = differential(Form::generator(3, 3, false), iw);
    CHECK(d3 == Form::monomial(3, std::vector<int>{1, 2}, std::vector<int>{},
                               Scalar::one(ScalarMode::Exact)));
    // d(alpha^{1 1bar 3 3bar}) = 0: every term hits a repeated index
    Form f = Form::monomial(3, std::vector<int>{1, 3}, std::vector<int>{1, 3},
                            Scalar::one(ScalarMode::Exact));
    CHECK(differential(f, iw).is_zero());
}

TEST_CASE("bidegree pieces of d and their identities") {
    const ComplexNilAlgebra& kt = catalog("kodaira-thurston");
    Form d2 = differential(Form::generator(2, 2, false), kt);
    CHECK(project(d2, 1, 1) == d2);  // d alpha^2 is pure (1,1)
    const ComplexNilAlgebra& iw = catalog("iwasawa");
    Form d3 = differential(Form::generator(3, 3, false), iw);
    CHECK(project(d3, 2, 0) == d3);  // d alpha^3 is pure (2,0)

    Rng rng(107);
    auto algebras = assorted_valid_algebras(rng, 12);
    std::uniform_int_distribution<int> deg(0, 2);
    for (const auto& a : algebras)
        for (int trial = 0; trial < 8; ++trial) {
            int p = deg(rng), q = deg(rng);
            Form f = random_homogeneous_form(rng, a.n(), p, q);
            CHECK(differential(f, a) == del(f, a) + delbar(f, a));
            CHECK(del(del(f, a), a).is_zero());
            CHECK(delbar(delbar(f, a), a).is_zero());
            CHECK(del(delbar(f, a), a) == -delbar(del(f, a), a));
            CHECK(conjugate(differential(f, a)) == differential(conjugate(f), a));
        }
}

TEST_CASE("nilpotency_step: catalog values") {
    CHECK(nilpotency_step(ComplexNilAlgebra(2, "abelian", {}, {})) == 1);
    CHECK(nilpotency_step(catalog("torus")) == 1);
    CHECK(nilpotency_step(catalog("kodaira-thurston")) == 2);
    CHECK(nilpotency_step(catalog("iwasawa")) == 2);
    CHECK(nilpotency_step(three_step_fixture()) == 3);
    CHECK(nilpotency_step(two_step_outside_class_fixture()) == 2);
}

TEST_CASE("nilpotency_step = 1 iff abelian") {
    Rng rng(109);
    for (int trial = 0; trial < 30; ++trial) {
        ComplexNilAlgebra a = random_normal_form_algebra(rng, 3, 2);
        CHECK((nilpotency_step(a) == 1) == a.is_abelian());
    }
}

TEST_CASE("nilpotency_step is invariant under invertible coframe changes") {
    Rng rng(113);
    auto algebras = assorted_valid_algebras(rng, 10);
    for (const auto& a : algebras) {
        int expected = nilpotency_step(a);
        for (int trial = 0; trial < 3; ++trial) {
            CHECK(nilpotency_step(apply_coframe_change(a, random_invertible_change(rng, a.n()))) ==
                  expected);
            CHECK(nilpotency_step(apply_coframe_change(a, random_triangular_change(rng, a.n()))) ==
                  expected);
        }
    }
}

TEST_CASE("to_normal_form: catalog examples") {
    auto kt = to_normal_form(catalog("kodaira-thurston"));
    REQUIRE(kt.ok());
    CHECK(kt.nf->k == 1);
    CHECK(kt.nf->change.is_identity());

    auto iw = to_normal_form(catalog("iwasawa"));
    REQUIRE(iw.ok());
    CHECK(iw.nf->k == 2);
    CHECK(iw.nf->change.is_identity());
}

TEST_CASE("to_normal_form failure: non-closed index in d alpha^3") {
    // ker d = span{alpha^1} but d alpha^3 reaches index 2
    using Key = ComplexNilAlgebra::Key;
    ComplexNilAlgebra a(3, "outside",
                        {},
                        {{Key{2, 1, 1}, ExactComplex(Rational(1))},
                         {Key{3, 1, 1}, ExactComplex(Rational(1))},
                         {Key{3, 1, 2}, ExactComplex(Rational(1))},
                         {Key{3, 2, 1}, ExactComplex(Rational(1))}});
    REQUIRE(validate(a).valid);
    auto res = to_normal_form(a);
    CHECK(!res.ok());
    CHECK(res.failure.find("not in Lemma 2.3 class") != std::string::npos);

    CHECK(!to_normal_form(three_step_fixture()).ok());
    CHECK(!to_normal_form(two_step_outside_class_fixture()).ok());
}

TEST_CASE("to_normal_form is idempotent and survives coframe shuffling") {
    Rng rng(127);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<int> npick(2, 4);
        int n = npick(rng);
        std::uniform_int_distribution<int> kpick(1, n - 1);
        ComplexNilAlgebra a = random_nonabelian_normal_form_algebra(rng, n, kpick(rng));

        auto direct = to_normal_form(a);
        REQUIRE(direct.ok());
        auto again = to_normal_form(direct.nf->base);
        REQUIRE(again.ok());
        CHECK(again.nf->k == direct.nf->k);
        CHECK(again.nf->change.is_identity());
        CHECK(again.nf->base == direct.nf->base);

        // a change mixing only the closed part keeps the class
        ComplexNilAlgebra shuffled = apply_coframe_change(a, random_invertible_change(rng, n));
        auto from_shuffled = to_normal_form(shuffled);
        REQUIRE(from_shuffled.ok());
        CHECK(from_shuffled.nf->k == direct.nf->k);
        CHECK(is_normal_form(from_shuffled.nf->base, from_shuffled.nf->k));
    }
}

TEST_CASE("abelian algebras get the trivial normal form") {
    auto res = to_normal_form(catalog("torus"));
    REQUIRE(res.ok());
    CHECK(res.nf->k == 3);
    CHECK(res.nf->change.is_identity());
}

TEST_CASE("apply_coframe_change preserves validity and round-trips") {
    Rng rng(131);
    auto algebras = assorted_valid_algebras(rng, 8);
    for (const auto& a : algebras) {
        CoframeChange ch = random_invertible_change(rng, a.n());
        ComplexNilAlgebra b = apply_coframe_change(a, ch);
        CHECK(validate(b).valid);
        CMatrix inv;
        REQUIRE(invert(ch.T, inv));
        CHECK(apply_coframe_change(b, CoframeChange{inv}) == a);
    }
}
