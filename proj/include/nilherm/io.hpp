#pragma once

#include <json.hpp>

#include <string>

#include "nilherm/catalog.hpp"
#include "nilherm/search.hpp"
#include "nilherm/verifier.hpp"

namespace nilherm::io {

/// Key order is preserved so identical values always serialize to identical
/// bytes (the determinism contract covers structured output too).
using Json = nlohmann::ordered_json;

// algebra files: { "name", "n", "twoZero": [{"j","r","s","re","im"}...],
//                  "oneOne": [...] }, rationals as "p/q" / decimal strings
// or plain JSON numbers; duplicate (j,r,s) keys rejected, r<s in twoZero.
Json algebra_to_json(const ComplexNilAlgebra& a);
ComplexNilAlgebra algebra_from_json(const Json& j);
ComplexNilAlgebra load_algebra_file(const std::string& path);

// metric files: { "n", "entries": [{"i","j","re","im"}...] }, lower triangle
// including the diagonal; Hermitian completion automatic; diagonal entries
// must have zero imaginary part.
Json metric_to_json(const HermitianMetric& h);
HermitianMetric metric_from_json(const Json& j);
HermitianMetric load_metric_file(const std::string& path);

Json classification_to_json(const MetricClass& c);
std::string classification_to_text(const MetricClass& c);

Json report_to_json(const FeasibilityReport& r);
FeasibilityReport report_from_json(const Json& j);
std::string report_to_text(const FeasibilityReport& r);

Json both_report_to_json(const BothReport& r);
std::string both_report_to_text(const BothReport& r);

Json trace_to_json(const ProofTrace& t);
std::string trace_to_text(const ProofTrace& t);

Json validation_to_json(const ComplexNilAlgebra& a, const ValidationReport& v);
std::string validation_to_text(const ComplexNilAlgebra& a, const ValidationReport& v);

std::string format_double(double v);

}  // namespace nilherm::io
