#include "nilherm/algebra.hpp"

#include <bit>
#include <stdexcept>

namespace nilherm {

namespace {

std::uint64_t bit_of(int index) { return std::uint64_t{1} << (index - 1); }

std::vector<int> unpack(std::uint64_t mask) {
    std::vector<int> idx;
    while (mask) {
        idx.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return idx;
}

Scalar as_scalar(const ExactComplex& z, ScalarMode mode) {
    return mode == ScalarMode::Exact ? Scalar::exact(z) : Scalar::floating(z.to_double());
}

}  // namespace

ComplexNilAlgebra::ComplexNilAlgebra(int n, std::string name,
                                     std::map<Key, ExactComplex> two_zero,
                                     std::map<Key, ExactComplex> one_one)
    : n_(n), name_(std::move(name)) {
    if (n < 1 || n > 62) throw std::invalid_argument("ComplexNilAlgebra: n out of range [1,62]");
    for (const auto& [key, c] : two_zero) {
        auto [j, r, s] = key;
        if (j < 1 || j > n || r < 1 || r > n || s < 1 || s > n)
            throw std::invalid_argument("ComplexNilAlgebra: index out of range in twoZero");
        if (r >= s)
            throw std::invalid_argument("ComplexNilAlgebra: twoZero requires r < s");
        if (!c.is_zero()) two_zero_.emplace(key, c);
    }
    for (const auto& [key, c] : one_one) {
        auto [j, r, s] = key;
        if (j < 1 || j > n || r < 1 || r > n || s < 1 || s > n)
            throw std::invalid_argument("ComplexNilAlgebra: index out of range in oneOne");
        if (!c.is_zero()) one_one_.emplace(key, c);
    }
}

ExactComplex ComplexNilAlgebra::two_zero_coeff(int j, int r, int s) const {
    if (r == s) return {};
    bool flip = r > s;
    if (flip) std::swap(r, s);
    auto it = two_zero_.find({j, r, s});
    if (it == two_zero_.end()) return {};
    return flip ? -it->second : it->second;
}

ExactComplex ComplexNilAlgebra::one_one_coeff(int j, int r, int s) const {
    auto it = one_one_.find({j, r, s});
    return it == one_one_.end() ? ExactComplex{} : it->second;
}

Form ComplexNilAlgebra::d_generator(int j, bool barred, ScalarMode mode) const {
    if (j < 1 || j > n_) throw std::invalid_argument("d_generator: index out of range");
    Form d(n_, mode);
    for (const auto& [key, c] : two_zero_) {
        auto [jj, r, s] = key;
        if (jj != j) continue;
        d.add_term(FormKey{bit_of(r) | bit_of(s), 0}, as_scalar(c, mode));
    }
    for (const auto& [key, c] : one_one_) {
        auto [jj, r, s] = key;
        if (jj != j) continue;
        d.add_term(FormKey{bit_of(r), bit_of(s)}, as_scalar(c, mode));
    }
    return barred ? conjugate(d) : d;
}

ComplexNilAlgebra ComplexNilAlgebra::renamed(std::string name) const {
    ComplexNilAlgebra a = *this;
    a.name_ = std::move(name);
    return a;
}

Form differential(const Form& f, const ComplexNilAlgebra& a) {
    if (f.n() != a.n())
        throw std::invalid_argument("differential: form and algebra dimensions differ");
    Form result(f.n(), f.mode());

    // cache d of each generator in this mode
    std::vector<Form> d_holo(a.n() + 1), d_anti(a.n() + 1);
    std::vector<bool> have(a.n() + 1, false);
    auto dgen = [&](int i, bool barred) -> const Form& {
        if (!have[i]) {
            d_holo[i] = a.d_generator(i, false, f.mode());
            d_anti[i] = conjugate(d_holo[i]);
            have[i] = true;
        }
        return barred ? d_anti[i] : d_holo[i];
    };

    for (const auto& [k, c] : f.terms()) {
        // d(f_1 ^ .. ^ f_m) = sum_l (-1)^l (d f_l) ^ (rest); the 2-form
        // d f_l commutes to the front, factors in canonical order
        int pos = 0;
        auto handle = [&](int idx, bool barred) {
            const Form& df = dgen(idx, barred);
            if (!df.is_zero()) {
                FormKey rest = k;
                if (barred)
                    rest.anti &= ~bit_of(idx);
                else
                    rest.holo &= ~bit_of(idx);
                Scalar coeff = (pos % 2) ? -c : c;
                Form rest_form(f.n(), f.mode());
                rest_form.add_term(rest, coeff);
                result += wedge(df, rest_form);
            }
            ++pos;
        };
        for (int idx : unpack(k.holo)) handle(idx, false);
        for (int idx : unpack(k.anti)) handle(idx, true);
    }
    return result;
}

Form del(const Form& f, const ComplexNilAlgebra& a) {
    Form result(f.n(), f.mode());
    // collect per bidegree, then keep the (p+1,q) piece of each
    std::map<std::pair<int, int>, Form> comps;
    for (const auto& [k, c] : f.terms()) {
        auto pq = std::pair{std::popcount(k.holo), std::popcount(k.anti)};
        auto [it, inserted] = comps.try_emplace(pq, Form(f.n(), f.mode()));
        it->second.add_term(k, c);
    }
    for (auto& [pq, comp] : comps) result += project(differential(comp, a), pq.first + 1, pq.second);
    return result;
}

Form delbar(const Form& f, const ComplexNilAlgebra& a) {
    Form result(f.n(), f.mode());
    std::map<std::pair<int, int>, Form> comps;
    for (const auto& [k, c] : f.terms()) {
        auto pq = std::pair{std::popcount(k.holo), std::popcount(k.anti)};
        auto [it, inserted] = comps.try_emplace(pq, Form(f.n(), f.mode()));
        it->second.add_term(k, c);
    }
    for (auto& [pq, comp] : comps) result += project(differential(comp, a), pq.first, pq.second + 1);
    return result;
}

ValidationReport validate(const ComplexNilAlgebra& a) {
    ValidationReport rep;
    rep.valid = true;
    for (int j = 1; j <= a.n(); ++j) {
        Form dd = differential(a.d_generator(j, false), a);
        if (!dd.is_zero()) rep.valid = false;
        rep.generators.push_back({j, std::move(dd)});
    }
    return rep;
}

namespace {

// 2-form as an antisymmetric matrix over the 2n generators
// gamma^1..gamma^n = alpha^i, gamma^{n+1}..gamma^{2n} = alpha^{ibar}
CMatrix two_form_matrix(const Form& f) {
    int n = f.n();
    CMatrix m(2 * n, 2 * n);
    auto put = [&](int a, int b, const ExactComplex& c) {
        m.at(a, b) += c;
        m.at(b, a) -= c;
    };
    for (const auto& [k, c] : f.terms()) {
        const ExactComplex& z = c.exact_value();
        auto h = unpack(k.holo);
        auto an = unpack(k.anti);
        if (h.size() == 2)
            put(h[0] - 1, h[1] - 1, z);
        else if (h.size() == 1 && an.size() == 1)
            put(h[0] - 1, n + an[0] - 1, z);
        else if (an.size() == 2)
            put(n + an[0] - 1, n + an[1] - 1, z);
        else
            throw std::invalid_argument("two_form_matrix: form is not a 2-form");
    }
    return m;
}

}  // namespace

int nilpotency_step(const ComplexNilAlgebra& a) {
    int n = a.n();
    int dim = 2 * n;

    std::vector<CMatrix> d_of_gamma;
    d_of_gamma.reserve(dim);
    for (int i = 1; i <= n; ++i) d_of_gamma.push_back(two_form_matrix(a.d_generator(i, false)));
    for (int i = 1; i <= n; ++i) d_of_gamma.push_back(two_form_matrix(a.d_generator(i, true)));

    // W_0 = {0}; W_{i+1} = {phi : d phi in Lambda^2(W_i)}, both sides
    // conjugation-stable, so the complex computation mirrors the real one.
    std::vector<CVector> w;  // basis rows of W_i
    for (int step = 1; step <= dim + 1; ++step) {
        // functionals annihilating W_i = kernel of the basis-row matrix
        CMatrix wmat(static_cast<int>(w.size()), dim);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (int j = 0; j < dim; ++j) wmat.at(static_cast<int>(i), j) = w[i][j];
        std::vector<CVector> ann = kernel_basis(wmat);

        // d(sum_a x_a gamma^a) has image inside W_i iff every annihilating
        // functional kills every column of sum_a x_a M_a
        CMatrix constraints(static_cast<int>(ann.size()) * dim, dim);
        int row = 0;
        for (const CVector& f : ann) {
            for (int col = 0; col < dim; ++col) {
                for (int va = 0; va < dim; ++va) {
                    ExactComplex e;
                    for (int v = 0; v < dim; ++v) {
                        const ExactComplex& mv = d_of_gamma[va].at(v, col);
                        if (!mv.is_zero()) e += f[v] * mv;
                    }
                    constraints.at(row, va) = e;
                }
                ++row;
            }
        }
        std::vector<CVector> w_next = kernel_basis(constraints);
        if (static_cast<int>(w_next.size()) == dim) return step;
        if (w_next.size() == w.size()) throw NotNilpotentError("not nilpotent");
        w = std::move(w_next);
    }
    throw std::logic_error("nilpotency_step: filtration failed to terminate");
}

Form substitute_generators(const Form& f, const CMatrix& old_in_new) {
    int n = f.n();
    if (old_in_new.rows() != n || old_in_new.cols() != n)
        throw std::invalid_argument("substitute_generators: matrix size mismatch");
    Form result(n, f.mode());
    for (const auto& [k, c] : f.terms()) {
        Form acc = Form::scalar_form(n, c);
        auto expand = [&](int idx, bool barred) {
            Form img(n, f.mode());
            for (int u = 1; u <= n; ++u) {
                ExactComplex e = old_in_new.at(idx - 1, u - 1);
                if (barred) e = e.conj();
                if (e.is_zero()) continue;
                FormKey gk;
                (barred ? gk.anti : gk.holo) = bit_of(u);
                img.add_term(gk, as_scalar(e, f.mode()));
            }
            acc = wedge(acc, img);
        };
        for (int idx : unpack(k.holo)) expand(idx, false);
        for (int idx : unpack(k.anti)) expand(idx, true);
        result += acc;
    }
    return result;
}

ComplexNilAlgebra apply_coframe_change(const ComplexNilAlgebra& a, const CoframeChange& change) {
    int n = a.n();
    if (change.n() != n)
        throw std::invalid_argument("apply_coframe_change: dimension mismatch");
    CMatrix s;
    if (!invert(change.T, s))
        throw std::invalid_argument("apply_coframe_change: singular coframe change");

    std::map<ComplexNilAlgebra::Key, ExactComplex> two_zero, one_one;
    for (int j = 1; j <= n; ++j) {
        // d beta^j = sum_m T_{jm} d alpha^m, rewritten over beta
        Form dj(n, ScalarMode::Exact);
        for (int m = 1; m <= n; ++m) {
            ExactComplex t = change.T.at(j - 1, m - 1);
            if (t.is_zero()) continue;
            dj += Scalar::exact(t) * a.d_generator(m, false);
        }
        Form over_beta = substitute_generators(dj, s);
        for (const auto& [k, c] : over_beta.terms()) {
            auto h = unpack(k.holo);
            auto an = unpack(k.anti);
            if (h.size() == 2)
                two_zero[{j, h[0], h[1]}] = c.exact_value();
            else if (h.size() == 1 && an.size() == 1)
                one_one[{j, h[0], an[0]}] = c.exact_value();
            else
                throw std::logic_error("apply_coframe_change: unexpected bidegree");
        }
    }
    return {n, a.name(), std::move(two_zero), std::move(one_one)};
}

NormalFormResult to_normal_form(const ComplexNilAlgebra& a) {
    int n = a.n();
    if (a.is_abelian())
        return {NormalForm{a, n, CoframeChange::identity(n)}, ""};

    // kernel of x |-> sum_j x_j d alpha^j over the (1,0)-forms
    std::vector<Form> d_gens;
    std::map<FormKey, int> row_of;
    for (int j = 1; j <= n; ++j) {
        d_gens.push_back(a.d_generator(j, false));
        for (const auto& [k, c] : d_gens.back().terms()) row_of.try_emplace(k, static_cast<int>(row_of.size()));
    }
    CMatrix sys(static_cast<int>(row_of.size()), n);
    for (int j = 1; j <= n; ++j)
        for (const auto& [k, c] : d_gens[j - 1].terms()) sys.at(row_of[k], j - 1) = c.exact_value();

    std::vector<CVector> ker = kernel_basis(sys);
    int k = static_cast<int>(ker.size());
    if (k == 0)
        return {std::nullopt, "not in Lemma 2.3 class: no closed (1,0)-form"};

    // rows of T: closed coframe first, then standard generators keeping rank
    CMatrix t(n, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) = ker[i][j];
    int filled = k;
    for (int j = 0; j < n && filled < n; ++j) {
        CMatrix probe(filled + 1, n);
        for (int i = 0; i < filled; ++i)
            for (int c = 0; c < n; ++c) probe.at(i, c) = t.at(i, c);
        probe.at(filled, j) = ExactComplex::one();
        if (rank(probe) == filled + 1) {
            t.at(filled, j) = ExactComplex::one();
            ++filled;
        }
    }
    if (filled != n) throw std::logic_error("to_normal_form: coframe completion failed");

    CoframeChange change{t};
    ComplexNilAlgebra in_new = apply_coframe_change(a, change);
    for (const auto& [key, c] : in_new.two_zero()) {
        auto [j, r, s] = key;
        if (j <= k) throw std::logic_error("to_normal_form: closed generator not closed");
        if (r > k || s > k)
            return {std::nullopt, "not in Lemma 2.3 class: d(beta^" + std::to_string(j) +
                                      ") involves a non-closed index"};
    }
    for (const auto& [key, c] : in_new.one_one()) {
        auto [j, r, s] = key;
        if (j <= k) throw std::logic_error("to_normal_form: closed generator not closed");
        if (r > k || s > k)
            return {std::nullopt, "not in Lemma 2.3 class: d(beta^" + std::to_string(j) +
                                      ") involves a non-closed index"};
    }
    return {NormalForm{in_new, k, change}, ""};
}

bool is_normal_form(const ComplexNilAlgebra& a, int k) {
    if (k < 1 || k > a.n()) return false;
    for (const auto& [key, c] : a.two_zero()) {
        auto [j, r, s] = key;
        if (j <= k || r > k || s > k) return false;
    }
    for (const auto& [key, c] : a.one_one()) {
        auto [j, r, s] = key;
        if (j <= k || r > k || s > k) return false;
    }
    return true;
}

}  // namespace nilherm
