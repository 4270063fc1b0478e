#include "nilherm/verifier.hpp"

#include <sstream>

namespace nilherm {

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string algebra_text(const ComplexNilAlgebra& a) {
    std::ostringstream os;
    os << a.name() << "|n=" << a.n();
    for (const auto& [k, c] : a.two_zero()) {
        auto [j, r, s] = k;
        os << "|A" << j << "," << r << "," << s << "=" << to_string(c);
    }
    for (const auto& [k, c] : a.one_one()) {
        auto [j, r, s] = k;
        os << "|B" << j << "," << r << "," << s << "=" << to_string(c);
    }
    return os.str();
}

std::string metric_text(const HermitianMetric& h) {
    std::ostringstream os;
    os << "n=" << h.n();
    for (int i = 0; i < h.n(); ++i)
        for (int j = 0; j < h.n(); ++j) os << "|" << to_string(h.at(i, j));
    return os.str();
}

// pairing omega'(X, conj X) = sum_{i,j>k} a_{i jbar} x_i conj(x_j), real
// and nonnegative for positive definite metrics
Rational pairing(const HermitianMetric& h, int k, const CVector& v) {
    ExactComplex sum;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j].is_zero()) continue;
            sum += h.at(k + static_cast<int>(i), k + static_cast<int>(j)) * v[i] * v[j].conj();
        }
    }
    if (sum.im != 0) throw std::logic_error("x-vector pairing: non-real value");
    return sum.re;
}

}  // namespace

bool XVectorFamily::all_zero() const {
    auto zero = [](const std::map<std::pair<int, int>, CVector>& m) {
        for (const auto& [rs, v] : m)
            for (const auto& c : v)
                if (!c.is_zero()) return false;
        return true;
    };
    return zero(holo) && zero(mixed);
}

XVectorFamily x_vectors(const NormalForm& nf) {
    if (!is_normal_form(nf.base, nf.k))
        throw std::invalid_argument("x_vectors: non-normal-form input");
    XVectorFamily fam;
    fam.n = nf.base.n();
    fam.k = nf.k;
    for (int r = 1; r <= nf.k; ++r)
        for (int s = 1; s <= nf.k; ++s) {
            CVector vh(fam.n - nf.k), vm(fam.n - nf.k);
            for (int i = nf.k + 1; i <= fam.n; ++i) {
                vh[i - nf.k - 1] = nf.base.two_zero_coeff(i, r, s);
                vm[i - nf.k - 1] = nf.base.one_one_coeff(i, r, s);
            }
            fam.holo[{r, s}] = std::move(vh);
            fam.mixed[{r, s}] = std::move(vm);
        }
    return fam;
}

QuadraticIdentity quadratic_identity(const NormalForm& nf, const HermitianMetric& h) {
    XVectorFamily fam = x_vectors(nf);
    QuadraticIdentity qi;
    qi.lhs = 0;
    for (const auto& [rs, v] : fam.holo) qi.lhs += pairing(h, nf.k, v);
    for (const auto& [rs, v] : fam.mixed) qi.lhs += fam.mixed_weight_sq * pairing(h, nf.k, v);
    qi.rhs = sktnew_value(nf, h);
    qi.equal = qi.lhs == qi.rhs;
    return qi;
}

std::string to_string(TraceConclusion c) {
    switch (c) {
        case TraceConclusion::ForcedAbelian: return "forcedAbelian";
        case TraceConclusion::HypothesisFailedBalanced: return "hypothesisFailed(balanced)";
        case TraceConclusion::HypothesisFailedSkt: return "hypothesisFailed(skt)";
        case TraceConclusion::OutsideLemmaClass: return "outsideLemmaClass";
    }
    return "?";
}

ProofTrace proof_chain(const ComplexNilAlgebra& a, const HermitianMetric& g,
                       const HermitianMetric& g_prime) {
    if (g.n() != a.n() || g_prime.n() != a.n())
        throw std::invalid_argument("proof_chain: dimension mismatch between algebra and metrics");
    if (!g.is_positive_definite())
        throw NotPositiveDefiniteError("proof_chain: balanced candidate g is not positive definite");
    if (!g_prime.is_positive_definite())
        throw NotPositiveDefiniteError("proof_chain: SKT candidate g' is not positive definite");

    ProofTrace trace;
    std::uint64_t running = fnv1a(algebra_text(a));
    running = fnv1a(metric_text(g), running);
    running = fnv1a(metric_text(g_prime), running);

    auto push = [&](const std::string& name, bool ok, const std::string& details) {
        running = fnv1a(name + "|" + details, running);
        trace.steps.push_back({name, hex64(running), ok ? "ok" : "fail", details});
    };
    auto conclude = [&](TraceConclusion c, const std::string& detail) {
        trace.conclusion = c;
        trace.conclusion_detail = detail;
        push("conclusion", c == TraceConclusion::ForcedAbelian, to_string(c) +
                                                                    (detail.empty() ? "" : ": " + detail));
        return trace;
    };

    // (a) the argument applies to at-most-2-step algebras only
    int step = 0;
    try {
        step = nilpotency_step(a);
    } catch (const NotNilpotentError&) {
        push("twoStepCheck", false, "not nilpotent");
        return conclude(TraceConclusion::OutsideLemmaClass, "algebra is not nilpotent");
    }
    if (step > 2) {
        push("twoStepCheck", false, "nilpotency step = " + std::to_string(step));
        return conclude(TraceConclusion::OutsideLemmaClass,
                        "nilpotency step " + std::to_string(step) + " > 2");
    }
    push("twoStepCheck", true, "nilpotency step = " + std::to_string(step));

    // (b) closed coframe first, the rest built from closed indices
    NormalFormResult nfr = to_normal_form(a);
    if (!nfr.ok()) {
        push("normalForm", false, nfr.failure);
        return conclude(TraceConclusion::OutsideLemmaClass, nfr.failure);
    }
    const NormalForm& nf = *nfr.nf;
    push("normalForm", true,
         "k = " + std::to_string(nf.k) +
             (nf.change.is_identity() ? ", identity change" : ", coframe change applied"));

    // (c) make the coframe unitary for g. The unit-triangular part of
    // Gram-Schmidt is always rational; the remaining per-axis sqrt scalings
    // are carried as squared weights d so every later quantity stays exact.
    HermitianMetric g_nf = transform_metric(g, nf.change);
    MetricDiagonalization diag = diagonalize_metric(nf, g_nf);
    bool exact_unitary = true;
    for (const Rational& d : diag.diag)
        if (!rational_sqrt(d)) exact_unitary = false;

    NormalForm gamma_nf = diag.nf;
    std::vector<Rational> weights(diag.diag.begin(), diag.diag.end());
    if (exact_unitary) {
        UnitarizeResult u = unitarize(nf, g_nf);
        gamma_nf = u.nf;
        weights.assign(a.n(), Rational(1));
        push("unitarize", true, "unitary coframe, triangular change with positive diagonal");
    } else {
        std::string ds;
        for (int i = 0; i < a.n(); ++i) ds += (i ? "," : "") + to_string(diag.diag[i]);
        push("unitarize", true,
             "diagonal coframe with squared weights (" + ds + "); sqrt scalings kept as weights");
    }
    HermitianMetric gp_gamma = transform_metric(g_prime, gamma_nf.change);
    std::span<const Rational> wk(weights.data(), static_cast<std::size_t>(nf.k));

    // (d) balanced hypothesis through the residuals of the unitary coframe
    bool unit_weights = exact_unitary;
    auto residuals = unit_weights ? balanced_residuals(gamma_nf)
                                  : balanced_residuals_weighted(gamma_nf, wk);
    bool g_balanced = true;
    std::string res_text;
    for (const auto& [l, v] : residuals) {
        if (!v.is_zero()) g_balanced = false;
        res_text += (res_text.empty() ? "" : ", ") + ("residual_" + std::to_string(l)) + " = " +
                    to_string(v);
    }
    if (res_text.empty()) res_text = "no residuals (k = n)";
    MetricClass g_class = classify(g, a);
    if (g_class.balanced != g_balanced)
        throw std::logic_error("proof_chain: residuals disagree with the symbolic balanced check");
    push("balancedResiduals", g_balanced, res_text);
    if (!g_balanced)
        return conclude(TraceConclusion::HypothesisFailedBalanced,
                        "g is not balanced; defect " + to_string(g_class.balanced_defect) +
                            "; " + res_text);

    // (e) SKT hypothesis for g': full symbolic check plus the per-(r,s)
    // extracted components (in the weighted coframe these are positive
    // multiples of the unitary-coframe values)
    auto coeffs = skt_reduced_coefficients(gamma_nf, gp_gamma);
    std::string coeff_text;
    bool coeffs_zero = true;
    for (const auto& [rs, v] : coeffs) {
        if (!v.is_zero()) coeffs_zero = false;
        coeff_text += (coeff_text.empty() ? "" : ", ") + ("(" + std::to_string(rs.first) + "," +
                                                          std::to_string(rs.second) + ") = " +
                                                          to_string(v));
    }
    if (coeff_text.empty()) coeff_text = "no (r,s) pairs (k < 2)";
    MetricClass gp_class = classify(g_prime, a);
    if (gp_class.skt && !coeffs_zero)
        throw std::logic_error("proof_chain: SKT metric with nonzero extracted component");
    push("coefficientIdentity", gp_class.skt, coeff_text);
    if (!gp_class.skt)
        return conclude(TraceConclusion::HypothesisFailedSkt,
                        "g' is not SKT; defect " + to_string(gp_class.skt_defect) + "; " +
                            coeff_text);

    // (f) the summed identity under the balanced assumption
    Rational sktnew = unit_weights ? sktnew_value(gamma_nf, gp_gamma)
                                   : sktnew_value_weighted(gamma_nf, gp_gamma, wk);
    if (sktnew != 0)
        throw std::logic_error("proof_chain: sktnew nonzero under verified hypotheses");
    push("sktnewIdentity", true, "value = 0");

    // (g) positivity: the pairing sum equals the sktnew value, each summand
    // is nonnegative, so every X vector vanishes and the algebra is abelian
    XVectorFamily fam = x_vectors(gamma_nf);
    Rational lhs = 0;
    for (const auto& [rs, v] : fam.holo) {
        Rational w = unit_weights ? Rational(1)
                                  : Rational(1) / (weights[rs.first - 1] * weights[rs.second - 1]);
        lhs += w * pairing(gp_gamma, fam.k, v);
    }
    for (const auto& [rs, v] : fam.mixed) {
        Rational w = unit_weights ? Rational(1)
                                  : Rational(1) / (weights[rs.first - 1] * weights[rs.second - 1]);
        lhs += w * fam.mixed_weight_sq * pairing(gp_gamma, fam.k, v);
    }
    if (lhs != sktnew)
        throw std::logic_error("proof_chain: pairing sum disagrees with sktnew value");
    if (!fam.all_zero())
        throw std::logic_error("proof_chain: zero pairing sum with nonzero X vectors");
    if (!gamma_nf.base.is_abelian())
        throw std::logic_error("proof_chain: X vectors vanish on a non-abelian algebra");
    push("xVectors", true, "pairing sum = 0; all X_{rs}, X_{r sbar} vanish");

    return conclude(TraceConclusion::ForcedAbelian,
                    "every alpha^r is closed; all structure constants vanish");
}

std::vector<SweepRow> theorem_sweep(
    const std::vector<std::pair<std::string, ComplexNilAlgebra>>& entries,
    const SearchOptions& opts) {
    std::vector<SweepRow> rows;
    for (const auto& [name, algebra] : entries) {
        SweepRow row;
        row.name = name;
        ValidationReport v = validate(algebra);
        if (!v.valid) {
            row.included = false;
            row.note = "rejected at validation: d^2 != 0";
            rows.push_back(std::move(row));
            continue;
        }
        BothReport both = find_both(algebra, opts);
        row.included = true;
        row.skt_status = to_string(both.skt.status);
        row.balanced_status = to_string(both.balanced.status);
        row.abelian = both.abelian;
        row.consistent = both.consistent_with_theorem;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace nilherm
