#include "nilherm/search.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace nilherm {

std::string to_string(SearchTarget t) {
    switch (t) {
        case SearchTarget::Skt: return "skt";
        case SearchTarget::Balanced: return "balanced";
        case SearchTarget::Both: return "both";
    }
    return "?";
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Feasible: return "feasible";
        case SearchStatus::InfeasibleCertified: return "infeasibleCertified";
        case SearchStatus::Unknown: return "unknown";
    }
    return "?";
}

namespace {

// Hermitian parameter basis: n diagonal real units, then for each i<j the
// real and imaginary off-diagonal units. Fixed enumeration order.
struct HermitianParams {
    int n;
    int count() const { return n * n; }
    CMatrix basis_matrix(int t) const {
        CMatrix m(n, n);
        if (t < n) {
            m.at(t, t) = ExactComplex::one();
            return m;
        }
        int idx = t - n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (idx == 0) {
                    m.at(i, j) = ExactComplex::one();
                    m.at(j, i) = ExactComplex::one();
                    return m;
                }
                if (idx == 1) {
                    m.at(i, j) = ExactComplex::i();
                    m.at(j, i) = -ExactComplex::i();
                    return m;
                }
                idx -= 2;
            }
        throw std::out_of_range("HermitianParams: parameter index");
    }
};

std::mt19937_64 seeded_engine(std::uint64_t base, int stream) {
    return std::mt19937_64(base + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(stream + 1));
}

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m.at(i, j).to_double();
    return e;
}

// random lower triangular float factor, entries in [-1,1], diagonal in [0.5, 1.5]
Eigen::MatrixXcd random_triangular_factor(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> diag(0.5, 1.5);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) m(i, j) = std::complex<double>(unit(rng), unit(rng));
        m(i, i) = diag(rng);
    }
    return m;
}

Form float_fundamental_form(const Eigen::MatrixXcd& h) {
    int n = static_cast<int>(h.rows());
    Form omega(n, ScalarMode::Floating);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (h(i, j) == std::complex<double>{}) continue;
            omega.add_term(FormKey{std::uint64_t{1} << i, std::uint64_t{1} << j},
                           Scalar::floating(h(i, j)));
        }
    return omega;
}

double balanced_defect_float(const Eigen::MatrixXcd& h, const ComplexNilAlgebra& a) {
    Form omega = float_fundamental_form(h);
    Form power = omega;
    for (int i = 2; i <= a.n() - 1; ++i) power = wedge(power, omega);
    if (a.n() == 1) power = omega;  // degenerate case: balanced reads as Kaehler
    return coeff_norm_sq(differential(power, a)).float_value().real();
}

}  // namespace

SktLinearSystem skt_linear_system(const ComplexNilAlgebra& a) {
    HermitianParams params{a.n()};
    int m = params.count();

    // one symbolic del-delbar per parameter direction
    std::vector<Form> images;
    images.reserve(m);
    std::map<FormKey, int> row_of;
    for (int t = 0; t < m; ++t) {
        HermitianMetric p(params.basis_matrix(t));
        Form img = del(delbar(fundamental_form(p), a), a);
        for (const auto& [k, c] : img.terms()) row_of.try_emplace(k, static_cast<int>(row_of.size()));
        images.push_back(std::move(img));
    }

    // split each complex 4-form component into two real equations
    CMatrix sys(2 * static_cast<int>(row_of.size()), m);
    for (int t = 0; t < m; ++t)
        for (const auto& [k, c] : images[t].terms()) {
            const ExactComplex& z = c.exact_value();
            int r = 2 * row_of[k];
            sys.at(r, t) = ExactComplex(z.re);
            sys.at(r + 1, t) = ExactComplex(z.im);
        }

    SktLinearSystem out;
    out.n = a.n();
    out.equations = rank(sys);
    std::vector<CVector> ker = kernel_basis(sys);
    for (const CVector& v : ker) {
        CMatrix h(a.n(), a.n());
        for (int t = 0; t < m; ++t) {
            if (v[t].is_zero()) continue;
            if (v[t].im != 0) throw std::logic_error("skt_linear_system: non-real kernel entry");
            CMatrix b = params.basis_matrix(t);
            for (int i = 0; i < a.n(); ++i)
                for (int j = 0; j < a.n(); ++j) h.at(i, j) += ExactComplex(v[t].re) * b.at(i, j);
        }
        out.basis.emplace_back(h);
    }
    for (int i = 1; i <= a.n(); ++i) {
        bool forced = true;
        for (const auto& b : out.basis)
            if (!b.at(i - 1, i - 1).is_zero()) {
                forced = false;
                break;
            }
        if (forced) out.forced_zero_diagonal.push_back(i);
    }
    return out;
}

bool satisfies_skt_system(const SktLinearSystem& sys, const HermitianMetric& h) {
    if (h.n() != sys.n) throw std::invalid_argument("satisfies_skt_system: dimension mismatch");
    // membership in the span of the exact basis: rank comparison
    HermitianParams params{sys.n};
    int m = params.count();
    auto coords = [&](const HermitianMetric& x) {
        CVector v(m);
        int t = 0;
        for (int i = 0; i < sys.n; ++i) v[t++] = ExactComplex(x.at(i, i).re);
        for (int i = 0; i < sys.n; ++i)
            for (int j = i + 1; j < sys.n; ++j) {
                v[t++] = ExactComplex(x.at(i, j).re);
                v[t++] = ExactComplex(x.at(i, j).im);
            }
        return v;
    };
    CMatrix with(static_cast<int>(sys.basis.size()) + 1, m);
    for (std::size_t b = 0; b < sys.basis.size(); ++b) {
        CVector v = coords(sys.basis[b]);
        for (int t = 0; t < m; ++t) with.at(static_cast<int>(b), t) = v[t];
    }
    CVector v = coords(h);
    for (int t = 0; t < m; ++t) with.at(static_cast<int>(sys.basis.size()), t) = v[t];
    CMatrix without(static_cast<int>(sys.basis.size()), m);
    for (std::size_t b = 0; b < sys.basis.size(); ++b)
        for (int t = 0; t < m; ++t) without.at(static_cast<int>(b), t) = with.at(static_cast<int>(b), t);
    return rank(with) == rank(without);
}

FeasibilityReport find_skt_metric(const ComplexNilAlgebra& a, const SearchOptions& opts) {
    FeasibilityReport rep;
    rep.target = SearchTarget::Skt;

    SktLinearSystem sys = skt_linear_system(a);
    if (!sys.forced_zero_diagonal.empty()) {
        rep.status = SearchStatus::InfeasibleCertified;
        std::string c = "linear system forces ";
        for (std::size_t i = 0; i < sys.forced_zero_diagonal.size(); ++i) {
            int d = sys.forced_zero_diagonal[i];
            if (i) c += ", ";
            c += "a_{" + std::to_string(d) + " " + std::to_string(d) + "bar} = 0";
        }
        c += "; contradicts positive-definiteness";
        rep.certificate = c;
        return rep;
    }

    HermitianMetric id = HermitianMetric::identity(a.n());
    if (satisfies_skt_system(sys, id)) {
        rep.status = SearchStatus::Feasible;
        rep.witness = id;
        return rep;
    }

    // float phase: maximize the smallest eigenvalue over the solution
    // subspace, restricted to the unit ball of coordinates
    int m = static_cast<int>(sys.basis.size());
    std::vector<Eigen::MatrixXcd> basis_f;
    basis_f.reserve(m);
    for (const auto& b : sys.basis) basis_f.push_back(to_eigen(b.matrix()));

    // Gram matrix for least-squares projection of a target metric
    Eigen::MatrixXd gram(m, m);
    for (int t = 0; t < m; ++t)
        for (int u = 0; u < m; ++u)
            gram(t, u) = (basis_f[t].adjoint() * basis_f[u]).trace().real();
    auto project_coords = [&](const Eigen::MatrixXcd& target) {
        Eigen::VectorXd rhs(m);
        for (int t = 0; t < m; ++t) rhs(t) = (basis_f[t].adjoint() * target).trace().real();
        return Eigen::VectorXd(gram.ldlt().solve(rhs));
    };

    double best_lambda = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x;
    for (int seed_idx = 0; seed_idx < std::max(1, opts.seeds); ++seed_idx) {
        ++rep.seeds_tried;
        Eigen::VectorXd x;
        if (seed_idx == 0) {
            x = project_coords(Eigen::MatrixXcd::Identity(a.n(), a.n()));
        } else {
            auto rng = seeded_engine(opts.seed, seed_idx);
            Eigen::MatrixXcd f = random_triangular_factor(a.n(), rng);
            x = project_coords(f.adjoint() * f);
        }
        if (x.norm() > 1.0) x /= x.norm();

        for (int it = 1; it <= opts.max_iter; ++it) {
            Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(a.n(), a.n());
            for (int t = 0; t < m; ++t) h += x(t) * basis_f[t];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
            double lambda = eig.eigenvalues()(0);
            if (lambda > best_lambda) {
                best_lambda = lambda;
                best_x = x;
            }
            Eigen::VectorXcd u = eig.eigenvectors().col(0);
            Eigen::VectorXd g(m);
            for (int t = 0; t < m; ++t) g(t) = (u.adjoint() * basis_f[t] * u)(0).real();
            if (g.norm() < 1e-15) break;
            x += (0.3 / std::sqrt(static_cast<double>(it))) * g / g.norm();
            if (x.norm() > 1.0) x /= x.norm();
        }
    }

    if (best_lambda > opts.tolerance) {
        // rationalize coordinates: stays exactly inside the solution subspace
        CMatrix h(a.n(), a.n());
        for (int t = 0; t < m; ++t) {
            Rational c = rationalize(best_x(t), 1000000);
            if (c == 0) continue;
            const CMatrix bm = sys.basis[t].matrix();
            for (int i = 0; i < a.n(); ++i)
                for (int j = 0; j < a.n(); ++j) h.at(i, j) += ExactComplex(Rational(c)) * bm.at(i, j);
        }
        HermitianMetric candidate(h);
        if (candidate.is_positive_definite()) {
            if (!classify(candidate, a).skt)
                throw std::logic_error("find_skt_metric: subspace witness fails exact SKT check");
            rep.status = SearchStatus::Feasible;
            rep.witness = candidate;
            rep.defect = 0.0;
            return rep;
        }
    }

    rep.status = SearchStatus::Unknown;
    rep.defect = best_lambda == -std::numeric_limits<double>::infinity()
                     ? 0.0
                     : std::max(0.0, -best_lambda);
    return rep;
}

FeasibilityReport find_balanced_metric(const ComplexNilAlgebra& a, const SearchOptions& opts) {
    FeasibilityReport rep;
    rep.target = SearchTarget::Balanced;

    HermitianMetric id = HermitianMetric::identity(a.n());
    if (classify(id, a).balanced) {
        rep.status = SearchStatus::Feasible;
        rep.witness = id;
        return rep;
    }

    // decidable obstruction: k = 1 and non-abelian
    NormalFormResult nfr = to_normal_form(a);
    if (nfr.ok() && nfr.nf->k == 1 && !a.is_abelian()) {
        auto res = balanced_residuals(*nfr.nf);
        std::string nonzero;
        for (const auto& [l, v] : res)
            if (!v.is_zero()) {
                nonzero = "residual_" + std::to_string(l) + " = " + to_string(v);
                break;
            }
        rep.status = SearchStatus::InfeasibleCertified;
        rep.certificate =
            "k=1 obstruction: " + nonzero +
            " rescales by a positive factor under every unitarizing triangular change; "
            "no Hermitian metric is balanced";
        return rep;
    }

    // float phase: descend |d(omega^{n-1})|^2 over H = M^H M
    int n = a.n();
    int np = n * n;  // real parameters of the lower triangular factor
    auto unpack_factor = [&](const Eigen::VectorXd& p) {
        Eigen::MatrixXcd mfac = Eigen::MatrixXcd::Zero(n, n);
        int t = 0;
        for (int i = 0; i < n; ++i) mfac(i, i) = p(t++);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                mfac(i, j) = std::complex<double>(p(t), p(t + 1));
                t += 2;
            }
        return mfac;
    };
    auto defect_of = [&](const Eigen::VectorXd& p) {
        Eigen::MatrixXcd mfac = unpack_factor(p);
        return balanced_defect_float(mfac.adjoint() * mfac, a);
    };

    double best_defect = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_p;
    for (int seed_idx = 0; seed_idx < std::max(1, opts.seeds); ++seed_idx) {
        ++rep.seeds_tried;
        Eigen::VectorXd p = Eigen::VectorXd::Zero(np);
        if (seed_idx == 0) {
            for (int i = 0; i < n; ++i) p(i) = 1.0;
        } else {
            auto rng = seeded_engine(opts.seed, 4096 + seed_idx);
            Eigen::MatrixXcd f = random_triangular_factor(n, rng);
            int t = 0;
            for (int i = 0; i < n; ++i) p(t++) = f(i, i).real();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j) {
                    p(t++) = f(i, j).real();
                    p(t++) = f(i, j).imag();
                }
        }

        double fval = defect_of(p);
        for (int it = 0; it < opts.max_iter && fval > opts.tolerance; ++it) {
            // central finite differences
            Eigen::VectorXd g(np);
            const double fd = 1e-6;
            for (int t = 0; t < np; ++t) {
                Eigen::VectorXd pp = p, pm = p;
                pp(t) += fd;
                pm(t) -= fd;
                g(t) = (defect_of(pp) - defect_of(pm)) / (2 * fd);
            }
            double gn = g.norm();
            if (gn < 1e-14) break;
            double step = 0.5;
            bool moved = false;
            while (step > 1e-12) {
                Eigen::VectorXd q = p - step * g / gn;
                for (int i = 0; i < n; ++i) q(i) = std::max(q(i), 0.05);  // keep the factor invertible
                double fq = defect_of(q);
                if (fq < fval) {
                    p = q;
                    fval = fq;
                    moved = true;
                    break;
                }
                step /= 2;
            }
            if (!moved) break;
        }
        if (fval < best_defect) {
            best_defect = fval;
            best_p = p;
        }
        if (best_defect <= opts.tolerance) break;
    }

    if (best_defect <= opts.tolerance) {
        // snap the factor (not the metric) to small denominators, re-check exactly
        Eigen::MatrixXcd mfac = unpack_factor(best_p);
        for (std::int64_t den : {12LL, 120LL, 10000LL, 1000000LL}) {
            CMatrix mr(n, n);
            bool invertible = true;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) {
                    mr.at(i, j) = ExactComplex(rationalize(mfac(i, j).real(), den),
                                               rationalize(mfac(i, j).imag(), den));
                    if (i == j && mr.at(i, j).is_zero()) invertible = false;
                }
            if (!invertible) continue;
            HermitianMetric candidate(mr.adjoint() * mr);
            if (!candidate.is_positive_definite()) continue;
            if (classify(candidate, a).balanced) {
                rep.status = SearchStatus::Feasible;
                rep.witness = candidate;
                rep.defect = 0.0;
                return rep;
            }
        }
    }

    rep.status = SearchStatus::Unknown;
    rep.defect = std::isfinite(best_defect) ? best_defect : 0.0;
    return rep;
}

BothReport find_both(const ComplexNilAlgebra& a, const SearchOptions& opts) {
    BothReport rep;
    rep.skt = find_skt_metric(a, opts);
    rep.balanced = find_balanced_metric(a, opts);
    rep.abelian = a.is_abelian();
    bool both = rep.skt.status == SearchStatus::Feasible &&
                rep.balanced.status == SearchStatus::Feasible;
    rep.consistent_with_theorem = !both || rep.abelian;
    return rep;
}

}  // namespace nilherm
