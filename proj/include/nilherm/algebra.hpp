#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nilherm/form.hpp"
#include "nilherm/linalg.hpp"

namespace nilherm {

/// The ascending filtration on 1-forms failed to exhaust the space.
struct NotNilpotentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Real 2n-dimensional nilpotent Lie algebra with invariant complex
/// structure, presented through the differential of a (1,0)-coframe:
///
///   d alpha^j = sum_{r<s} A^j_{rs} alpha^{rs} + sum_{r,s} B^j_{rsbar} alpha^{r sbar}
///
/// Only the r<s coefficients of the (2,0)-part are stored; the antisymmetric
/// extension is implicit. No (0,2)-part is representable, so integrability
/// of the complex structure holds by construction. Sign convention:
/// d phi(X,Y) = -phi([X,Y]), which makes d^2 = 0 equivalent to Jacobi.
class ComplexNilAlgebra {
public:
    using Key = std::tuple<int, int, int>;  // (j, r, s)

    ComplexNilAlgebra(int n, std::string name, std::map<Key, ExactComplex> two_zero,
                      std::map<Key, ExactComplex> one_one);

    int n() const { return n_; }
    const std::string& name() const { return name_; }
    const std::map<Key, ExactComplex>& two_zero() const { return two_zero_; }
    const std::map<Key, ExactComplex>& one_one() const { return one_one_; }

    /// A^j_{rs} with the antisymmetric extension (r>s allowed, r==s gives 0).
    ExactComplex two_zero_coeff(int j, int r, int s) const;
    /// B^j_{r sbar}.
    ExactComplex one_one_coeff(int j, int r, int s) const;

    /// d(alpha^j), or d(alpha^{jbar}) = conj(d alpha^j).
    Form d_generator(int j, bool barred, ScalarMode mode = ScalarMode::Exact) const;

    bool is_abelian() const { return two_zero_.empty() && one_one_.empty(); }

    ComplexNilAlgebra renamed(std::string name) const;

    friend bool operator==(const ComplexNilAlgebra& a, const ComplexNilAlgebra& b) {
        return a.n_ == b.n_ && a.name_ == b.name_ && a.two_zero_ == b.two_zero_ &&
               a.one_one_ == b.one_one_;
    }

private:
    int n_;
    std::string name_;
    std::map<Key, ExactComplex> two_zero_;
    std::map<Key, ExactComplex> one_one_;
};

/// Chevalley-Eilenberg differential extended to arbitrary forms by the
/// graded Leibniz rule.
Form differential(const Form& f, const ComplexNilAlgebra& a);

/// (p,q) -> (p+1,q) and (p,q+1) pieces of d, taken componentwise on
/// inhomogeneous forms. d = del + delbar since no dalpha has a (0,2)-part.
Form del(const Form& f, const ComplexNilAlgebra& a);
Form delbar(const Form& f, const ComplexNilAlgebra& a);

/// d(d alpha^j) per generator; the algebra satisfies Jacobi iff all vanish.
struct ValidationReport {
    struct Entry {
        int j;
        Form dd;
    };
    std::vector<Entry> generators;
    bool valid = false;
};
ValidationReport validate(const ComplexNilAlgebra& a);

/// Step s at which V_i = {phi : d phi in Lambda^2(V_{i-1})} on real 1-forms
/// exhausts the space (computed on the conjugation-stable complexification).
/// s = 1 iff abelian. Throws NotNilpotentError if the filtration stalls.
int nilpotency_step(const ComplexNilAlgebra& a);

/// Invertible linear change of (1,0)-coframe: beta^i = sum_j T_{ij} alpha^j.
struct CoframeChange {
    CMatrix T;

    static CoframeChange identity(int n) { return {CMatrix::identity(n)}; }
    int n() const { return T.rows(); }
    bool is_identity() const { return T.is_identity(); }
    /// Composite change: apply *this, then `second`.
    CoframeChange then(const CoframeChange& second) const { return {second.T * T}; }
};

/// Rewrite a form given over the alpha-coframe in terms of the beta-coframe,
/// where `old_in_new` expresses alpha^i = sum_u M_{iu} beta^u.
Form substitute_generators(const Form& f, const CMatrix& old_in_new);

/// Structure constants of the same algebra in the coframe beta = T alpha.
ComplexNilAlgebra apply_coframe_change(const ComplexNilAlgebra& a, const CoframeChange& change);

/// Coframe shape of Lemma-type normal form: alpha^1..alpha^k closed and
/// every d alpha^j (j>k) built only from indices <= k.
struct NormalForm {
    ComplexNilAlgebra base;
    int k;
    CoframeChange change;  // from the input coframe to `base`'s coframe
};

struct NormalFormResult {
    std::optional<NormalForm> nf;
    std::string failure;
    bool ok() const { return nf.has_value(); }
};

/// Deterministic normal form: k = dim ker(d) on (1,0)-forms, kernel basis in
/// reduced column echelon form (ties broken by lowest pivot index), extended
/// by the first standard coframe elements that keep the rows independent.
/// Fails, as a first-class result, when some d beta^j (j>k) still involves a
/// non-closed index. Abelian input yields k = n with the identity change.
NormalFormResult to_normal_form(const ComplexNilAlgebra& a);

bool is_normal_form(const ComplexNilAlgebra& a, int k);

}  // namespace nilherm
