#include "nilherm/form.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

namespace nilherm {

namespace {

std::uint64_t bit_of(int index) { return std::uint64_t{1} << (index - 1); }

// indices of set bits, ascending (1-based)
std::vector<int> unpack(std::uint64_t mask) {
    std::vector<int> idx;
    while (mask) {
        int b = std::countr_zero(mask);
        idx.push_back(b + 1);
        mask &= mask - 1;
    }
    return idx;
}

// parity of the permutation sorting `v` ascending; -1 on repeats
int sort_sign(std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) return 0;
            if (v[i] > v[j]) sign = -sign;
        }
    std::sort(v.begin(), v.end());
    return sign;
}

}  // namespace

int merge_sign(std::uint64_t a, std::uint64_t b) {
    // inversions: pairs (x in a, y in b) with x > y
    int inv = 0;
    std::uint64_t bb = b;
    while (bb) {
        int y = std::countr_zero(bb);
        inv += std::popcount(a >> (y + 1));
        bb &= bb - 1;
    }
    return inv % 2 ? -1 : 1;
}

Form::Form(int n, ScalarMode mode) : n_(n), mode_(mode) {
    if (n < 0 || n > 62) throw std::invalid_argument("Form: n out of range [0,62]");
}

void Form::add_term(const FormKey& k, const Scalar& c) {
    if (c.mode() != mode_) throw ModeError("Form: term mode mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar Form::coeff(const FormKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar::zero(mode_) : it->second;
}

Form Form::generator(int n, int index, bool barred, ScalarMode mode) {
    if (index < 1 || index > n) throw std::invalid_argument("Form::generator: index out of range");
    Form f(n, mode);
    FormKey k;
    (barred ? k.anti : k.holo) = bit_of(index);
    f.terms_.emplace(k, Scalar::one(mode));
    return f;
}

Form Form::monomial(int n, std::span<const int> holo, std::span<const int> anti,
                    const Scalar& c) {
    Form f(n, c.mode());
    std::vector<int> h(holo.begin(), holo.end());
    std::vector<int> a(anti.begin(), anti.end());
    for (int i : h)
        if (i < 1 || i > n) throw std::invalid_argument("Form::monomial: index out of range");
    for (int i : a)
        if (i < 1 || i > n) throw std::invalid_argument("Form::monomial: index out of range");
    int sign = sort_sign(h) * sort_sign(a);
    if (sign == 0) return f;
    FormKey k;
    for (int i : h) k.holo |= bit_of(i);
    for (int i : a) k.anti |= bit_of(i);
    Scalar coeff = c;
    if (sign < 0) coeff = -coeff;
    f.add_term(k, coeff);
    return f;
}

Form Form::scalar_form(int n, const Scalar& c) {
    Form f(n, c.mode());
    f.add_term(FormKey{}, c);
    return f;
}

Form Form::to_float() const {
    Form f(n_, ScalarMode::Floating);
    for (const auto& [k, c] : terms_) f.add_term(k, c.to_float());
    return f;
}

void Form::check_compatible(const Form& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Form: mixing forms over different coframes");
    if (mode_ != o.mode_) throw ModeError("Form: mixed exact/float arithmetic");
}

Form& Form::operator+=(const Form& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

Form operator*(const Scalar& c, const Form& f) {
    Form r(f.n(), f.mode());
    if (c.is_zero()) return r;
    for (const auto& [k, v] : f.terms()) r.add_term(k, c * v);
    return r;
}

Form Form::operator-() const {
    Form r(n_, mode_);
    for (const auto& [k, c] : terms_) r.add_term(k, -c);
    return r;
}

Form wedge(const Form& a, const Form& b) {
    if (a.n() != b.n()) throw std::invalid_argument("wedge: mixing forms over different coframes");
    if (a.mode() != b.mode()) throw ModeError("wedge: mixed exact/float arithmetic");
    Form r(a.n(), a.mode());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            if ((ka.holo & kb.holo) || (ka.anti & kb.anti)) continue;
            // concatenation order: holoA antiA holoB antiB; move holoB left
            // past antiA, then merge the two ascending runs of each part
            int sign = merge_sign(ka.holo, kb.holo) * merge_sign(ka.anti, kb.anti);
            if ((std::popcount(ka.anti) * std::popcount(kb.holo)) % 2) sign = -sign;
            Scalar c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(FormKey{ka.holo | kb.holo, ka.anti | kb.anti}, c);
        }
    return r;
}

Form conjugate(const Form& f) {
    Form r(f.n(), f.mode());
    for (const auto& [k, c] : f.terms()) {
        int sign = (std::popcount(k.holo) * std::popcount(k.anti)) % 2 ? -1 : 1;
        Scalar v = c.conj();
        if (sign < 0) v = -v;
        r.add_term(FormKey{k.anti, k.holo}, v);
    }
    return r;
}

Form project(const Form& f, int p, int q) {
    Form r(f.n(), f.mode());
    for (const auto& [k, c] : f.terms())
        if (std::popcount(k.holo) == p && std::popcount(k.anti) == q) r.add_term(k, c);
    return r;
}

Scalar coeff_norm_sq(const Form& f) {
    Scalar s = Scalar::zero(f.mode());
    for (const auto& [k, c] : f.terms()) s += c.norm_sq();
    return s;
}

bool is_homogeneous(const Form& f, int* p, int* q) {
    if (f.is_zero()) {
        if (p) *p = 0;
        if (q) *q = 0;
        return true;
    }
    auto it = f.terms().begin();
    int fp = std::popcount(it->first.holo);
    int fq = std::popcount(it->first.anti);
    for (const auto& [k, c] : f.terms())
        if (std::popcount(k.holo) != fp || std::popcount(k.anti) != fq) return false;
    if (p) *p = fp;
    if (q) *q = fq;
    return true;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        std::string cs = c.str();
        bool negated = false;
        if (cs.size() > 1 && cs.front() == '-' && cs.find_first_of("+-", 1) == std::string::npos) {
            negated = true;
            cs.erase(cs.begin());
        }
        if (first) {
            if (negated) out += "-";
            first = false;
        } else {
            out += negated ? " - " : " + ";
        }
        std::string basis;
        if (k.holo || k.anti) {
            basis = "α^{";
            const char* sep = n_ > 9 ? "," : "";
            bool first_idx = true;
            for (int i : unpack(k.holo)) {
                if (!first_idx) basis += sep;
                basis += std::to_string(i);
                first_idx = false;
            }
            for (int i : unpack(k.anti)) {
                if (!first_idx) basis += sep;
                basis += std::to_string(i);
                basis += "̄";  // combining macron: barred index
                first_idx = false;
            }
            basis += "}";
        }
        if (basis.empty()) {
            out += cs;
        } else if (cs == "1") {
            out += basis;
        } else {
            bool composite = cs.find_first_of("+-", 1) != std::string::npos;
            out += composite ? "(" + cs + ")" + basis : cs + basis;
        }
    }
    return out;
}

}  // namespace nilherm
