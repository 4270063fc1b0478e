#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "nilherm/scalar.hpp"

namespace nilherm {

/// Multi-index of a canonical basis monomial
///   alpha^{r_1..r_p, sbar_1..sbar_q}   (holomorphic factors first, both
/// parts strictly ascending), stored as bitmasks with bit (i-1) <-> index i.
struct FormKey {
    std::uint64_t holo = 0;
    std::uint64_t anti = 0;
    auto operator<=>(const FormKey&) const = default;
};

/// Parity of the merge of two ascending index sets (number of transpositions
/// needed to interleave `b` into `a` when concatenated after it): +1 or -1.
int merge_sign(std::uint64_t a, std::uint64_t b);

/// Sparse element of the complexified exterior algebra on a fixed
/// (1,0)-coframe alpha^1..alpha^n and its conjugates. Terms are kept in
/// canonical normalization; zero coefficients are never stored. A form may
/// be inhomogeneous; all terms share one scalar mode.
class Form {
public:
    Form() = default;
    Form(int n, ScalarMode mode);

    int n() const { return n_; }
    ScalarMode mode() const { return mode_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<FormKey, Scalar>& terms() const { return terms_; }

    /// Fold `c` into the coefficient at canonical key `k`.
    void add_term(const FormKey& k, const Scalar& c);
    Scalar coeff(const FormKey& k) const;

    /// alpha^i or alpha^{ibar}.
    static Form generator(int n, int index, bool barred, ScalarMode mode = ScalarMode::Exact);
    /// Wedge monomial c * alpha^{h_1} ^ .. ^ alpha^{hbar_1} ^ .. with the
    /// factors given in arbitrary order; the reordering sign is folded into
    /// the coefficient, repeated indices give zero.
    static Form monomial(int n, std::span<const int> holo, std::span<const int> anti,
                         const Scalar& c);
    static Form scalar_form(int n, const Scalar& c);

    Form to_float() const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Scalar& c, const Form& f);
    Form operator-() const;
    friend bool operator==(const Form& a, const Form& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void check_compatible(const Form& o) const;

    int n_ = 0;
    ScalarMode mode_ = ScalarMode::Exact;
    std::map<FormKey, Scalar> terms_;
};

/// Graded-commutative exterior product in canonical normalization.
Form wedge(const Form& a, const Form& b);

/// Antilinear involution alpha^i <-> alpha^{ibar} with the reordering sign.
Form conjugate(const Form& f);

/// (p,q)-component; summing over all bidegrees reconstructs the form.
Form project(const Form& f, int p, int q);

/// Sum of squared moduli of the stored coefficients; real scalar in the
/// form's mode. Zero iff the form is zero (exact mode).
Scalar coeff_norm_sq(const Form& f);

bool is_homogeneous(const Form& f, int* p = nullptr, int* q = nullptr);

}  // namespace nilherm
