#include "nilherm/metric.hpp"

#include <stdexcept>

namespace nilherm {

namespace {

std::uint64_t bit_of(int index) { return std::uint64_t{1} << (index - 1); }

void check_normal_form(const NormalForm& nf, const char* where) {
    if (!is_normal_form(nf.base, nf.k))
        throw std::invalid_argument(std::string(where) + ": non-normal-form input");
}

}  // namespace

HermitianMetric::HermitianMetric(int n, std::vector<ExactComplex> row_major)
    : n_(n), a_(std::move(row_major)) {
    if (n < 1) throw std::invalid_argument("HermitianMetric: n must be positive");
    if (a_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("HermitianMetric: entry count != n^2");
    for (int i = 0; i < n; ++i) {
        if (at(i, i).im != 0)
            throw std::invalid_argument("HermitianMetric: diagonal entries must be real");
        for (int j = i + 1; j < n; ++j)
            if (!(at(i, j) == at(j, i).conj()))
                throw std::invalid_argument("HermitianMetric: matrix is not Hermitian");
    }
}

HermitianMetric::HermitianMetric(const CMatrix& m)
    : HermitianMetric(m.rows(), [&] {
          std::vector<ExactComplex> v;
          v.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
          for (int i = 0; i < m.rows(); ++i)
              for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
          return v;
      }()) {}

HermitianMetric HermitianMetric::identity(int n) {
    std::vector<ExactComplex> v(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = ExactComplex::one();
    return {n, std::move(v)};
}

CMatrix HermitianMetric::matrix() const {
    CMatrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m.at(i, j) = at(i, j);
    return m;
}

bool HermitianMetric::is_positive_definite() const {
    for (int m = 1; m <= n_; ++m) {
        CMatrix lead(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) lead.at(i, j) = at(i, j);
        ExactComplex d = determinant(lead);
        if (d.im != 0) throw std::logic_error("HermitianMetric: non-real principal minor");
        if (d.re <= 0) return false;
    }
    return true;
}

Form fundamental_form(const HermitianMetric& h, ScalarMode mode) {
    Form omega(h.n(), mode);
    for (int i = 1; i <= h.n(); ++i)
        for (int j = 1; j <= h.n(); ++j) {
            const ExactComplex& a = h.at(i - 1, j - 1);
            if (a.is_zero()) continue;
            Scalar c = mode == ScalarMode::Exact ? Scalar::exact(a) : Scalar::floating(a.to_double());
            omega.add_term(FormKey{bit_of(i), bit_of(j)}, c);
        }
    return omega;
}

MetricClass classify(const HermitianMetric& h, const ComplexNilAlgebra& a) {
    if (h.n() != a.n()) throw std::invalid_argument("classify: dimension mismatch");
    Form omega = fundamental_form(h);

    MetricClass mc;
    Form domega = differential(omega, a);
    mc.kahler_defect = coeff_norm_sq(domega).exact_value().re;

    Form ddbar = del(delbar(omega, a), a);
    mc.skt_defect = coeff_norm_sq(ddbar).exact_value().re;

    if (a.n() == 1) {
        mc.balanced_defect = mc.kahler_defect;
    } else {
        Form power = omega;
        for (int i = 2; i <= a.n() - 1; ++i) power = wedge(power, omega);
        mc.balanced_defect = coeff_norm_sq(differential(power, a)).exact_value().re;
    }

    mc.kahler = mc.kahler_defect == 0;
    mc.skt = mc.skt_defect == 0;
    mc.balanced = mc.balanced_defect == 0;
    return mc;
}

HermitianMetric transform_metric(const HermitianMetric& h, const CoframeChange& change) {
    if (change.n() != h.n())
        throw std::invalid_argument("transform_metric: dimension mismatch");
    CMatrix s;
    if (!invert(change.T, s))
        throw std::invalid_argument("transform_metric: singular coframe change");
    // a'_{u vbar} = sum_{ij} S_{iu} a_{i jbar} conj(S_{jv})
    return HermitianMetric(s.transpose() * h.matrix() * s.conjugate());
}

MetricDiagonalization diagonalize_metric(const NormalForm& nf, const HermitianMetric& h) {
    check_normal_form(nf, "diagonalize_metric");
    if (h.n() != nf.base.n())
        throw std::invalid_argument("diagonalize_metric: dimension mismatch");
    ReverseLdl f = reverse_ldl(h.matrix());
    if (!f.positive_definite)
        throw NotPositiveDefiniteError("diagonalize_metric: metric is not positive definite");

    CoframeChange change{f.unit_lower};
    ComplexNilAlgebra base = apply_coframe_change(nf.base, change);
    if (!is_normal_form(base, nf.k))
        throw std::logic_error("diagonalize_metric: triangular change left the normal form");
    return {NormalForm{std::move(base), nf.k, nf.change.then(change)}, change,
            std::move(f.diag)};
}

UnitarizeResult unitarize(const NormalForm& nf, const HermitianMetric& h) {
    check_normal_form(nf, "unitarize");
    if (h.n() != nf.base.n()) throw std::invalid_argument("unitarize: dimension mismatch");
    ReverseLdl f = reverse_ldl(h.matrix());
    if (!f.positive_definite)
        throw NotPositiveDefiniteError("unitarize: metric is not positive definite");

    int n = h.n();
    CMatrix t(n, n);
    for (int i = 0; i < n; ++i) {
        auto root = rational_sqrt(f.diag[i]);
        if (!root)
            throw IrrationalPivotError("unitarize: pivot " + to_string(f.diag[i]) +
                                       " has no rational square root");
        for (int j = 0; j <= i; ++j)
            t.at(i, j) = ExactComplex(Rational(*root)) * f.unit_lower.at(i, j);
    }

    CoframeChange change{t};
    ComplexNilAlgebra base = apply_coframe_change(nf.base, change);
    if (!is_normal_form(base, nf.k))
        throw std::logic_error("unitarize: triangular change left the normal form");
    if (!(transform_metric(h, change) == HermitianMetric::identity(n)))
        throw std::logic_error("unitarize: transformed metric is not the identity");
    return {NormalForm{std::move(base), nf.k, nf.change.then(change)}, change};
}

std::map<int, ExactComplex> balanced_residuals(const NormalForm& nf) {
    check_normal_form(nf, "balanced_residuals");
    std::map<int, ExactComplex> res;
    for (int l = nf.k + 1; l <= nf.base.n(); ++l) {
        ExactComplex sum;
        for (int r = 1; r <= nf.k; ++r) sum += nf.base.one_one_coeff(l, r, r);
        res[l] = sum;
    }
    return res;
}

std::map<int, ExactComplex> balanced_residuals_weighted(const NormalForm& nf,
                                                        std::span<const Rational> d) {
    check_normal_form(nf, "balanced_residuals_weighted");
    if (static_cast<int>(d.size()) < nf.k)
        throw std::invalid_argument("balanced_residuals_weighted: weight vector too short");
    std::map<int, ExactComplex> res;
    for (int l = nf.k + 1; l <= nf.base.n(); ++l) {
        ExactComplex sum;
        for (int r = 1; r <= nf.k; ++r)
            sum += nf.base.one_one_coeff(l, r, r) / ExactComplex(Rational(d[r - 1]));
        res[l] = sum;
    }
    return res;
}

std::map<std::pair<int, int>, ExactComplex> skt_reduced_coefficients(const NormalForm& nf,
                                                                     const HermitianMetric& h) {
    check_normal_form(nf, "skt_reduced_coefficients");
    if (h.n() != nf.base.n())
        throw std::invalid_argument("skt_reduced_coefficients: dimension mismatch");
    const ComplexNilAlgebra& a = nf.base;
    std::map<std::pair<int, int>, ExactComplex> out;
    for (int r = 1; r <= nf.k; ++r)
        for (int s = r + 1; s <= nf.k; ++s) {
            ExactComplex sum;
            for (int i = nf.k + 1; i <= a.n(); ++i)
                for (int j = nf.k + 1; j <= a.n(); ++j) {
                    const ExactComplex& aij = h.at(i - 1, j - 1);
                    if (aij.is_zero()) continue;
                    ExactComplex term =
                        a.one_one_coeff(i, r, r) * a.one_one_coeff(j, s, s).conj() -
                        a.one_one_coeff(i, s, r) * a.one_one_coeff(j, s, r).conj() +
                        a.one_one_coeff(i, s, s) * a.one_one_coeff(j, r, r).conj() -
                        a.one_one_coeff(i, r, s) * a.one_one_coeff(j, r, s).conj() +
                        a.two_zero_coeff(i, r, s) * a.two_zero_coeff(j, s, r).conj();
                    sum += aij * term;
                }
            out[{r, s}] = sum;
        }
    return out;
}

namespace {

Rational sktnew_sum(const NormalForm& nf, const HermitianMetric& h,
                    std::span<const Rational> d) {
    const ComplexNilAlgebra& a = nf.base;
    ExactComplex total;
    for (int r = 1; r <= nf.k; ++r)
        for (int s = 1; s <= nf.k; ++s) {
            ExactComplex pair_sum;
            for (int i = nf.k + 1; i <= a.n(); ++i)
                for (int j = nf.k + 1; j <= a.n(); ++j) {
                    const ExactComplex& aij = h.at(i - 1, j - 1);
                    if (aij.is_zero()) continue;
                    ExactComplex two{Rational(2), Rational(0)};
                    ExactComplex term =
                        two * a.one_one_coeff(i, s, r) * a.one_one_coeff(j, s, r).conj() +
                        a.two_zero_coeff(i, r, s) * a.two_zero_coeff(j, r, s).conj();
                    pair_sum += aij * term;
                }
            if (!d.empty())
                pair_sum /= ExactComplex(Rational(d[r - 1] * d[s - 1]));
            total += pair_sum;
        }
    if (total.im != 0) throw std::logic_error("sktnew_value: non-real result");
    return total.re;
}

}  // namespace

Rational sktnew_value(const NormalForm& nf, const HermitianMetric& h) {
    check_normal_form(nf, "sktnew_value");
    if (h.n() != nf.base.n()) throw std::invalid_argument("sktnew_value: dimension mismatch");
    return sktnew_sum(nf, h, {});
}

Rational sktnew_value_weighted(const NormalForm& nf, const HermitianMetric& h,
                               std::span<const Rational> d) {
    check_normal_form(nf, "sktnew_value_weighted");
    if (h.n() != nf.base.n())
        throw std::invalid_argument("sktnew_value_weighted: dimension mismatch");
    if (static_cast<int>(d.size()) < nf.k)
        throw std::invalid_argument("sktnew_value_weighted: weight vector too short");
    return sktnew_sum(nf, h, d);
}

}  // namespace nilherm
