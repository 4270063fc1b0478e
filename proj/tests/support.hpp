#pragma once

// Shared deterministic generators and independent oracles for the test
// suites. Everything here is seeded explicitly; no global state.

#include <random>
#include <utility>
#include <vector>

#include "nilherm/catalog.hpp"
#include "nilherm/metric.hpp"

namespace nilherm::testsupport {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_abs_num = 3, int max_den = 4) {
    std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline ExactComplex random_complex(Rng& rng) {
    return {random_rational(rng), random_rational(rng)};
}

inline ExactComplex random_nonzero_complex(Rng& rng) {
    for (;;) {
        ExactComplex z = random_complex(rng);
        if (!z.is_zero()) return z;
    }
}

/// Random algebra already in normal-form shape: alpha^1..alpha^k closed,
/// d alpha^j (j>k) built from indices <= k only. Such constants satisfy
/// d^2 = 0 automatically, so every sample is valid and at most 2-step.
inline ComplexNilAlgebra random_normal_form_algebra(Rng& rng, int n, int k,
                                                    int density_percent = 60) {
    std::uniform_int_distribution<int> pct(0, 99);
    std::map<ComplexNilAlgebra::Key, ExactComplex> two_zero, one_one;
    for (int j = k + 1; j <= n; ++j) {
        for (int r = 1; r <= k; ++r)
            for (int s = r + 1; s <= k; ++s)
                if (pct(rng) < density_percent) {
                    ExactComplex c = random_complex(rng);
                    if (!c.is_zero()) two_zero[{j, r, s}] = c;
                }
        for (int r = 1; r <= k; ++r)
            for (int s = 1; s <= k; ++s)
                if (pct(rng) < density_percent) {
                    ExactComplex c = random_complex(rng);
                    if (!c.is_zero()) one_one[{j, r, s}] = c;
                }
    }
    return {n, "random-nf", std::move(two_zero), std::move(one_one)};
}

inline ComplexNilAlgebra random_nonabelian_normal_form_algebra(Rng& rng, int n, int k) {
    for (;;) {
        ComplexNilAlgebra a = random_normal_form_algebra(rng, n, k);
        if (!a.is_abelian() && to_normal_form(a).ok() && to_normal_form(a).nf->k == k) return a;
    }
}

inline CoframeChange random_triangular_change(Rng& rng, int n) {
    CMatrix t(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) t.at(i, j) = random_complex(rng);
        std::uniform_int_distribution<int> num(1, 3), den(1, 3);
        t.at(i, i) = ExactComplex(Rational(num(rng), den(rng)));
    }
    return {t};
}

inline CoframeChange random_invertible_change(Rng& rng, int n) {
    for (;;) {
        CMatrix t(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t.at(i, j) = random_complex(rng);
        if (!determinant(t).is_zero()) return {t};
    }
}

/// H = M^H M for a random lower triangular M with positive rational
/// diagonal: positive definite, and its Gram-Schmidt pivots are perfect
/// rational squares (pivot_i = M_ii^2), so exact unitarization applies.
inline HermitianMetric random_pd_metric(Rng& rng, int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) m.at(i, j) = random_complex(rng);
        std::uniform_int_distribution<int> num(1, 3), den(1, 2);
        m.at(i, i) = ExactComplex(Rational(num(rng), den(rng)));
    }
    return HermitianMetric(m.adjoint() * m);
}

inline Form random_form(Rng& rng, int n, int max_part_degree = 2, int term_count = 3) {
    Form f(n, ScalarMode::Exact);
    std::uniform_int_distribution<int> deg(0, max_part_degree);
    std::uniform_int_distribution<int> idx(1, n);
    for (int t = 0; t < term_count; ++t) {
        std::vector<int> holo, anti;
        int p = deg(rng), q = deg(rng);
        for (int i = 0; i < p; ++i) holo.push_back(idx(rng));
        for (int i = 0; i < q; ++i) anti.push_back(idx(rng));
        f += Form::monomial(n, holo, anti, Scalar::exact(random_complex(rng)));
    }
    return f;
}

inline Form random_homogeneous_form(Rng& rng, int n, int p, int q, int term_count = 3) {
    Form f(n, ScalarMode::Exact);
    std::uniform_int_distribution<int> idx(1, n);
    for (int t = 0; t < term_count; ++t) {
        std::vector<int> holo, anti;
        for (int i = 0; i < p; ++i) holo.push_back(idx(rng));
        for (int i = 0; i < q; ++i) anti.push_back(idx(rng));
        f += Form::monomial(n, holo, anti, Scalar::exact(random_complex(rng)));
    }
    return f;
}

/// Independent sign oracle: canonicalize an explicit factor list by bubble
/// sort (holomorphic block first, each block ascending). Returns 0 sign on
/// a repeated factor.
inline std::pair<int, FormKey> oracle_canonicalize(std::vector<std::pair<int, bool>> factors) {
    int sign = 1;
    auto before = [](const std::pair<int, bool>& x, const std::pair<int, bool>& y) {
        if (x.second != y.second) return !x.second;  // holomorphic first
        return x.first < y.first;
    };
    for (std::size_t i = 0; i + 1 < factors.size(); ++i)
        for (std::size_t j = 0; j + 1 < factors.size() - i; ++j) {
            if (factors[j] == factors[j + 1]) return {0, {}};
            if (before(factors[j + 1], factors[j])) {
                std::swap(factors[j], factors[j + 1]);
                sign = -sign;
            }
        }
    for (std::size_t i = 0; i + 1 < factors.size(); ++i)
        if (factors[i] == factors[i + 1]) return {0, {}};
    FormKey k;
    for (const auto& [idx, barred] : factors)
        (barred ? k.anti : k.holo) |= std::uint64_t{1} << (idx - 1);
    return {sign, k};
}

/// d alpha^2 = alpha^{1 1bar}, d alpha^3 = alpha^{1 2bar}: valid and
/// 3-step, hence outside the 2-step normal-form class.
inline ComplexNilAlgebra three_step_fixture() {
    using Key = ComplexNilAlgebra::Key;
    return {3,
            "three-step",
            {},
            {{Key{2, 1, 1}, ExactComplex(Rational(1))}, {Key{3, 1, 2}, ExactComplex(Rational(1))}}};
}

/// d alpha^2 = alpha^{13}, d alpha^3 = alpha^{12}: d^2 = 0 holds (the only
/// candidate term carries a repeated alpha^1) but the algebra is solvable,
/// not nilpotent - the filtration stalls.
inline ComplexNilAlgebra solvable_fixture() {
    using Key = ComplexNilAlgebra::Key;
    return {3,
            "solvable",
            {{Key{2, 1, 3}, ExactComplex(Rational(1))}, {Key{3, 1, 2}, ExactComplex(Rational(1))}},
            {}};
}

/// 2-step but with a mixed closed direction the (1,0)-kernel misses:
/// d alpha^2 = alpha^{1 1bar}, d alpha^3 = -alpha^{12} - alpha^{1 2bar}
/// (= alpha^1 wedged with the closed real combination alpha^2 + alpha^{2bar},
/// reversed). Valid, 2-step, yet not in the normal-form class.
inline ComplexNilAlgebra two_step_outside_class_fixture() {
    using Key = ComplexNilAlgebra::Key;
    return {3,
            "two-step-outside-class",
            {{Key{3, 1, 2}, ExactComplex(Rational(-1))}},
            {{Key{2, 1, 1}, ExactComplex(Rational(1))}, {Key{3, 1, 2}, ExactComplex(Rational(-1))}}};
}

/// Valid algebras of varied shape: catalog entries, random normal forms,
/// and coframe-shuffled versions of both (validity is basis-independent).
inline std::vector<ComplexNilAlgebra> assorted_valid_algebras(Rng& rng, int count) {
    std::vector<ComplexNilAlgebra> out;
    for (const auto& e : builtin_catalog()) out.push_back(e.algebra);
    out.push_back(three_step_fixture());
    std::uniform_int_distribution<int> npick(2, 4);
    while (static_cast<int>(out.size()) < count) {
        int n = npick(rng);
        std::uniform_int_distribution<int> kpick(1, n - 1);
        ComplexNilAlgebra a = random_normal_form_algebra(rng, n, kpick(rng));
        out.push_back(a);
        out.push_back(apply_coframe_change(a, random_invertible_change(rng, n)));
    }
    out.resize(count, out.front());
    return out;
}

}  // namespace nilherm::testsupport
