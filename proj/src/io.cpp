#include "nilherm/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nilherm::io {

namespace {

Rational rational_from_json(const Json& j, const char* field) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return rational_from_double(j.get<double>());
    throw ParseError(std::string("field '") + field + "' is not a rational");
}

int int_field(const Json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw ParseError(std::string("missing or non-integer field '") + field + "'");
    return j[field].get<int>();
}

ExactComplex complex_fields(const Json& j) {
    Rational re = j.contains("re") ? rational_from_json(j["re"], "re") : Rational(0);
    Rational im = j.contains("im") ? rational_from_json(j["im"], "im") : Rational(0);
    return {re, im};
}

Json complex_to_json_fields(const ExactComplex& z, Json& target) {
    target["re"] = to_string(z.re);
    target["im"] = to_string(z.im);
    return target;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in " + path);
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json algebra_to_json(const ComplexNilAlgebra& a) {
    Json j;
    j["name"] = a.name();
    j["n"] = a.n();
    j["twoZero"] = Json::array();
    for (const auto& [key, c] : a.two_zero()) {
        auto [jj, r, s] = key;
        Json e;
        e["j"] = jj;
        e["r"] = r;
        e["s"] = s;
        complex_to_json_fields(c, e);
        j["twoZero"].push_back(e);
    }
    j["oneOne"] = Json::array();
    for (const auto& [key, c] : a.one_one()) {
        auto [jj, r, s] = key;
        Json e;
        e["j"] = jj;
        e["r"] = r;
        e["s"] = s;
        complex_to_json_fields(c, e);
        j["oneOne"].push_back(e);
    }
    return j;
}

ComplexNilAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("algebra file: top level is not an object");
    if (!j.contains("name") || !j["name"].is_string())
        throw ParseError("algebra file: missing string field 'name'");
    int n = int_field(j, "n");

    std::map<ComplexNilAlgebra::Key, ExactComplex> two_zero, one_one;
    auto read_block = [&](const char* block, bool require_ordered,
                          std::map<ComplexNilAlgebra::Key, ExactComplex>& out) {
        if (!j.contains(block)) return;
        if (!j[block].is_array()) throw ParseError(std::string("algebra file: '") + block +
                                                   "' is not an array");
        for (const Json& e : j[block]) {
            int jj = int_field(e, "j");
            int r = int_field(e, "r");
            int s = int_field(e, "s");
            if (require_ordered && r >= s)
                throw ParseError("algebra file: twoZero entry needs r < s");
            ComplexNilAlgebra::Key key{jj, r, s};
            if (out.count(key))
                throw ParseError(std::string("algebra file: duplicate (j,r,s) key in ") + block);
            out.emplace(key, complex_fields(e));
        }
    };
    read_block("twoZero", true, two_zero);
    read_block("oneOne", false, one_one);

    try {
        return {n, j["name"].get<std::string>(), std::move(two_zero), std::move(one_one)};
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("algebra file: ") + e.what());
    }
}

ComplexNilAlgebra load_algebra_file(const std::string& path) {
    return algebra_from_json(load_json_file(path));
}

Json metric_to_json(const HermitianMetric& h) {
    Json j;
    j["n"] = h.n();
    j["entries"] = Json::array();
    for (int i = 0; i < h.n(); ++i)
        for (int jj = 0; jj <= i; ++jj) {
            const ExactComplex& z = h.at(i, jj);
            if (z.is_zero()) continue;
            Json e;
            e["i"] = i + 1;
            e["j"] = jj + 1;
            complex_to_json_fields(z, e);
            j["entries"].push_back(e);
        }
    return j;
}

HermitianMetric metric_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("metric file: top level is not an object");
    int n = int_field(j, "n");
    if (n < 1) throw ParseError("metric file: n must be positive");
    CMatrix m(n, n);
    std::set<std::pair<int, int>> seen;
    if (j.contains("entries")) {
        if (!j["entries"].is_array()) throw ParseError("metric file: 'entries' is not an array");
        for (const Json& e : j["entries"]) {
            int i = int_field(e, "i");
            int jj = int_field(e, "j");
            if (i < 1 || i > n || jj < 1 || jj > n)
                throw ParseError("metric file: entry index out of range");
            if (jj > i)
                throw ParseError("metric file: entries must lie in the lower triangle (i >= j)");
            if (!seen.insert({i, jj}).second)
                throw ParseError("metric file: duplicate (i,j) entry");
            ExactComplex z = complex_fields(e);
            if (i == jj && z.im != 0)
                throw ParseError("metric file: diagonal entries must be real");
            m.at(i - 1, jj - 1) = z;
            if (i != jj) m.at(jj - 1, i - 1) = z.conj();
        }
    }
    try {
        return HermitianMetric(m);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("metric file: ") + e.what());
    }
}

HermitianMetric load_metric_file(const std::string& path) {
    return metric_from_json(load_json_file(path));
}

Json classification_to_json(const MetricClass& c) {
    Json j;
    j["kahler"] = c.kahler;
    j["kahlerDefect"] = to_string(c.kahler_defect);
    j["skt"] = c.skt;
    j["sktDefect"] = to_string(c.skt_defect);
    j["balanced"] = c.balanced;
    j["balancedDefect"] = to_string(c.balanced_defect);
    return j;
}

std::string classification_to_text(const MetricClass& c) {
    auto line = [](const char* name, bool flag, const Rational& defect) {
        std::string s = std::string(name) + (flag ? "yes" : "no");
        if (!flag) s += " (defect " + to_string(defect) + ")";
        return s + "\n";
    };
    std::string out;
    out += line("kähler:   ", c.kahler, c.kahler_defect);
    out += line("skt:      ", c.skt, c.skt_defect);
    out += line("balanced: ", c.balanced, c.balanced_defect);
    return out;
}

Json report_to_json(const FeasibilityReport& r) {
    Json j;
    j["target"] = to_string(r.target);
    j["status"] = to_string(r.status);
    j["witness"] = r.witness ? metric_to_json(*r.witness) : Json(nullptr);
    j["certificate"] = r.certificate ? Json(*r.certificate) : Json(nullptr);
    j["defect"] = r.defect;
    j["seedsTried"] = r.seeds_tried;
    return j;
}

FeasibilityReport report_from_json(const Json& j) {
    FeasibilityReport r;
    std::string target = j.at("target").get<std::string>();
    if (target == "skt")
        r.target = SearchTarget::Skt;
    else if (target == "balanced")
        r.target = SearchTarget::Balanced;
    else if (target == "both")
        r.target = SearchTarget::Both;
    else
        throw ParseError("report: unknown target '" + target + "'");
    std::string status = j.at("status").get<std::string>();
    if (status == "feasible")
        r.status = SearchStatus::Feasible;
    else if (status == "infeasibleCertified")
        r.status = SearchStatus::InfeasibleCertified;
    else if (status == "unknown")
        r.status = SearchStatus::Unknown;
    else
        throw ParseError("report: unknown status '" + status + "'");
    if (j.contains("witness") && !j["witness"].is_null())
        r.witness = metric_from_json(j["witness"]);
    if (j.contains("certificate") && !j["certificate"].is_null())
        r.certificate = j["certificate"].get<std::string>();
    r.defect = j.value("defect", 0.0);
    r.seeds_tried = j.value("seedsTried", 0);
    return r;
}

namespace {

std::string metric_text(const HermitianMetric& h) {
    std::string s = "[";
    for (int i = 0; i < h.n(); ++i) {
        if (i) s += "; ";
        for (int j = 0; j < h.n(); ++j) {
            if (j) s += ", ";
            s += to_string(h.at(i, j));
        }
    }
    return s + "]";
}

}  // namespace

std::string report_to_text(const FeasibilityReport& r) {
    std::string out;
    out += "target: " + to_string(r.target) + "\n";
    out += "status: " + to_string(r.status) + "\n";
    if (r.witness) out += "witness: " + metric_text(*r.witness) + "\n";
    if (r.certificate) out += "certificate: " + *r.certificate + "\n";
    out += "defect: " + format_double(r.defect) + "\n";
    out += "seedsTried: " + std::to_string(r.seeds_tried) + "\n";
    return out;
}

Json both_report_to_json(const BothReport& r) {
    Json j;
    j["skt"] = report_to_json(r.skt);
    j["balanced"] = report_to_json(r.balanced);
    j["abelian"] = r.abelian;
    j["consistentWithTheorem"] = r.consistent_with_theorem;
    return j;
}

std::string both_report_to_text(const BothReport& r) {
    std::string out;
    out += "== skt ==\n" + report_to_text(r.skt);
    out += "== balanced ==\n" + report_to_text(r.balanced);
    out += std::string("abelian: ") + (r.abelian ? "yes" : "no") + "\n";
    out += std::string("consistentWithTheorem: ") + (r.consistent_with_theorem ? "yes" : "no") +
           "\n";
    return out;
}

Json trace_to_json(const ProofTrace& t) {
    Json j;
    j["steps"] = Json::array();
    for (const auto& s : t.steps) {
        Json e;
        e["name"] = s.name;
        e["inputsDigest"] = s.inputs_digest;
        e["outcome"] = s.outcome;
        e["details"] = s.details;
        j["steps"].push_back(e);
    }
    j["conclusion"] = to_string(t.conclusion);
    j["detail"] = t.conclusion_detail;
    return j;
}

std::string trace_to_text(const ProofTrace& t) {
    std::ostringstream os;
    os << "proof trace\n";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const ProofStep& s = t.steps[i];
        os << "  " << i + 1 << ". " << s.name;
        for (std::size_t pad = s.name.size(); pad < 20; ++pad) os << ' ';
        os << (s.outcome == "ok" ? "ok  " : "FAIL") << "  " << s.details << "  [" << s.inputs_digest
           << "]\n";
    }
    os << "conclusion: " << to_string(t.conclusion);
    if (!t.conclusion_detail.empty()) os << " — " << t.conclusion_detail;
    os << "\n";
    return os.str();
}

Json validation_to_json(const ComplexNilAlgebra& a, const ValidationReport& v) {
    Json j;
    j["algebra"] = a.name();
    j["n"] = a.n();
    j["generators"] = Json::array();
    for (const auto& e : v.generators) {
        Json g;
        g["j"] = e.j;
        g["dd"] = e.dd.str();
        j["generators"].push_back(g);
    }
    j["valid"] = v.valid;
    return j;
}

std::string validation_to_text(const ComplexNilAlgebra& a, const ValidationReport& v) {
    std::ostringstream os;
    os << "algebra: " << a.name() << " (n=" << a.n() << ")\n";
    for (const auto& e : v.generators)
        os << "  d(dα^" << e.j << ") = " << e.dd.str() << "\n";
    os << "result: " << (v.valid ? "valid" : "INVALID (d² ≠ 0)") << "\n";
    return os.str();
}

}  // namespace nilherm::io
