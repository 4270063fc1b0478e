#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "nilherm/algebra.hpp"

namespace nilherm {

struct NotPositiveDefiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The triangular factorization of the metric leaves the rationals
/// (a pivot has no rational square root).
struct IrrationalPivotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invariant Hermitian metric through its coefficient matrix a_{i jbar} in a
/// fixed (1,0)-coframe. Construction enforces the Hermitian symmetry
/// a_{i jbar} = conj(a_{j ibar}); positive definiteness is a separate,
/// exactly decidable predicate.
class HermitianMetric {
public:
    HermitianMetric(int n, std::vector<ExactComplex> row_major);
    explicit HermitianMetric(const CMatrix& m);

    static HermitianMetric identity(int n);

    int n() const { return n_; }
    /// 0-based entry a_{(i+1) (j+1)bar}.
    const ExactComplex& at(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }
    CMatrix matrix() const;

    /// Sylvester test: all leading principal minors positive (exact).
    bool is_positive_definite() const;

    friend bool operator==(const HermitianMetric& x, const HermitianMetric& y) {
        return x.n_ == y.n_ && x.a_ == y.a_;
    }

private:
    int n_;
    std::vector<ExactComplex> a_;
};

/// omega = sum a_{i jbar} alpha^i ^ alpha^{jbar}, written without an
/// i-prefactor. Every implemented condition is a zero-test, so the missing
/// constant is harmless; coefficient-level identities then match the metric
/// matrix entry for entry.
Form fundamental_form(const HermitianMetric& h, ScalarMode mode = ScalarMode::Exact);

/// Exact defects of the three metric conditions. Kaehler: d omega = 0;
/// SKT: del delbar omega = 0; balanced: d(omega^{n-1}) = 0 (for n = 1 the
/// power degenerates and the balanced defect is defined as the Kaehler one).
struct MetricClass {
    Rational kahler_defect;
    Rational skt_defect;
    Rational balanced_defect;
    bool kahler = false;
    bool skt = false;
    bool balanced = false;
};
MetricClass classify(const HermitianMetric& h, const ComplexNilAlgebra& a);

/// Coefficient matrix of the same metric in the coframe beta = T alpha.
HermitianMetric transform_metric(const HermitianMetric& h, const CoframeChange& change);

/// Flag-preserving unit-triangular change after which the metric matrix is
/// exactly diagonal. This is the rational part of Gram-Schmidt; the
/// remaining step is the per-axis scaling by sqrt(diag).
struct MetricDiagonalization {
    NormalForm nf;               // same k, coframe change composed in
    CoframeChange change;        // unit lower triangular
    std::vector<Rational> diag;  // metric in the new coframe
};
MetricDiagonalization diagonalize_metric(const NormalForm& nf, const HermitianMetric& h);

/// Triangular change T with positive real diagonal making the coframe
/// unitary (metric matrix exactly the identity) while preserving every flag
/// span{alpha^1..alpha^m}, hence the normal form and its k. Throws
/// NotPositiveDefiniteError, or IrrationalPivotError when some Gram-Schmidt
/// pivot is not the square of a rational.
struct UnitarizeResult {
    NormalForm nf;
    CoframeChange change;
};
UnitarizeResult unitarize(const NormalForm& nf, const HermitianMetric& h);

/// residual_l = sum_{r<=k} c^l_{r rbar} for each l > k. In a coframe unitary
/// for the metric under test, all residuals vanish iff that metric is
/// balanced.
std::map<int, ExactComplex> balanced_residuals(const NormalForm& nf);

/// Weighted variant for a coframe where the metric is diag(d) instead of the
/// identity: residual_l = sum_{r<=k} c^l_{r rbar} / d_r, with the same zero
/// set as the unitary-coframe residuals.
std::map<int, ExactComplex> balanced_residuals_weighted(const NormalForm& nf,
                                                        std::span<const Rational> d);

/// For each r < s <= k the alpha^{r s sbar rbar} component of del delbar
/// omega, expressed through the structure constants:
///   sum_{i,j>k} a_{i jbar} ( c^i_{r rbar} conj(c^j_{s sbar})
///                          - c^i_{s rbar} conj(c^j_{s rbar})
///                          + c^i_{s sbar} conj(c^j_{r rbar})
///                          - c^i_{r sbar} conj(c^j_{r sbar})
///                          + c^i_{rs}     conj(c^j_{sr}) ).
/// With our conventions this equals the coefficient of del delbar omega on
/// the canonically ordered basis form alpha^{rs rbar sbar} (extraction sign
/// pinned by the oracle test against the full symbolic expansion).
std::map<std::pair<int, int>, ExactComplex> skt_reduced_coefficients(const NormalForm& nf,
                                                                     const HermitianMetric& h);

/// sum_{i,j>k} sum_{r,s<=k} a_{i jbar} (2 c^i_{s rbar} conj(c^j_{s rbar})
///                                      + c^i_{rs} conj(c^j_{rs})).
/// Real by Hermitian symmetry; nonnegative for positive definite metrics;
/// zero iff all structure constants vanish.
Rational sktnew_value(const NormalForm& nf, const HermitianMetric& h);

/// Same sum with each (r,s) term weighted by 1/(d_r d_s): the value of the
/// plain sum in the unitary coframe when the present coframe has metric
/// diag(d). Positivity and the zero characterization are unchanged.
Rational sktnew_value_weighted(const NormalForm& nf, const HermitianMetric& h,
                               std::span<const Rational> d);

}  // namespace nilherm
