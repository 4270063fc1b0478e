#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilherm/metric.hpp"

namespace nilherm {

enum class SearchTarget { Skt, Balanced, Both };
enum class SearchStatus { Feasible, InfeasibleCertified, Unknown };

std::string to_string(SearchTarget t);
std::string to_string(SearchStatus s);

struct SearchOptions {
    int seeds = 16;
    int max_iter = 200;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
};

/// The SKT condition del delbar omega(H) = 0 is real-linear in the n^2 real
/// parameters of a Hermitian matrix H. The solution set is a linear subspace
/// (zero always satisfies it); SKT metrics are its positive definite points.
struct SktLinearSystem {
    int n = 0;
    int equations = 0;                       // independent real equations
    std::vector<HermitianMetric> basis;      // exact basis of the solution subspace
    std::vector<int> forced_zero_diagonal;   // diagonal entries that vanish on the
                                             // whole subspace (1-based indices)
};
SktLinearSystem skt_linear_system(const ComplexNilAlgebra& a);

/// Does the Hermitian matrix satisfy the exact SKT system?
bool satisfies_skt_system(const SktLinearSystem& sys, const HermitianMetric& h);

struct FeasibilityReport {
    SearchTarget target = SearchTarget::Skt;
    SearchStatus status = SearchStatus::Unknown;
    std::optional<HermitianMetric> witness;
    std::optional<std::string> certificate;
    double defect = 0.0;  // residual of the best float candidate; 0 when settled exactly
    int seeds_tried = 0;
};

/// Exact-first SKT search: solve the linear system over the rationals; a
/// diagonal entry forced to zero certifies infeasibility; otherwise maximize
/// the smallest eigenvalue over the solution subspace (concave) by projected
/// supergradient ascent with multistart, rationalize and re-verify exactly.
/// Witnesses are never accepted on float evidence alone.
FeasibilityReport find_skt_metric(const ComplexNilAlgebra& a, const SearchOptions& opts = {});

/// Balanced search: float-first multistart descent of the defect
/// |d(omega^{n-1})|^2 over metrics H = M^H M parameterized by a lower
/// triangular factor, followed by rationalization of M and an exact
/// re-check. Certified infeasibility only in the decidable k = 1 case,
/// where the single residual rescales by a positive factor under every
/// unitarizing triangular change.
FeasibilityReport find_balanced_metric(const ComplexNilAlgebra& a, const SearchOptions& opts = {});

struct BothReport {
    FeasibilityReport skt;
    FeasibilityReport balanced;
    bool abelian = false;
    bool consistent_with_theorem = false;  // !(both feasible) or abelian
};
BothReport find_both(const ComplexNilAlgebra& a, const SearchOptions& opts = {});

}  // namespace nilherm
