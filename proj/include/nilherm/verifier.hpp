#pragma once

#include "nilherm/search.hpp"

namespace nilherm {

/// The (1,0)-vector families read off the normal-form constants:
/// X_{rs} has components c^i_{rs} on X_i (i > k), X_{r sbar} has components
/// sqrt(2) c^i_{r sbar}. The sqrt(2) is carried as the exact squared weight 2
/// so every verifier quantity stays in the rational-complex field.
struct XVectorFamily {
    int n = 0;
    int k = 0;
    /// components indexed by (r,s), r,s <= k; vectors over i = k+1..n
    std::map<std::pair<int, int>, CVector> holo;   // X_{rs}
    std::map<std::pair<int, int>, CVector> mixed;  // X_{r sbar}, squared weight 2
    Rational mixed_weight_sq = 2;

    bool all_zero() const;
};
XVectorFamily x_vectors(const NormalForm& nf);

/// Both sides of the pairing identity
///   sum_{r,s} ( omega'(X_{rs}, conj X_{rs}) + omega'(X_{r sbar}, conj X_{r sbar}) )
///   = sum_{i,j>k} sum_{r,s<=k} a_{i jbar} (2 c^i_{s rbar} conj c^j_{s rbar}
///                                          + c^i_{rs} conj c^j_{rs}),
/// with the left side evaluated through the X-vector pairing
/// omega'(X, conj X) = sum a_{i jbar} x_i conj(x_j) and the right side through
/// sktnew_value. Exact equality is part of the verifier's contract.
struct QuadraticIdentity {
    Rational lhs;
    Rational rhs;
    bool equal = false;
};
QuadraticIdentity quadratic_identity(const NormalForm& nf, const HermitianMetric& h);

enum class TraceConclusion {
    ForcedAbelian,
    HypothesisFailedBalanced,
    HypothesisFailedSkt,
    OutsideLemmaClass,
};
std::string to_string(TraceConclusion c);

struct ProofStep {
    std::string name;
    std::string inputs_digest;
    std::string outcome;  // "ok" or "fail"
    std::string details;
};

/// Machine-checked run of the torus-rigidity argument on one algebra and one
/// candidate metric pair (g balanced, g' SKT). Steps appear in fixed order:
/// twoStepCheck, normalForm, unitarize, balancedResiduals,
/// coefficientIdentity, sktnewIdentity, xVectors, conclusion; each consumes
/// the previous step's output. With exactly balanced g and exactly SKT g'
/// the chain can only end in forcedAbelian; on a non-abelian algebra some
/// step's exact quantity is nonzero and the trace pinpoints it.
struct ProofTrace {
    std::vector<ProofStep> steps;
    TraceConclusion conclusion = TraceConclusion::OutsideLemmaClass;
    std::string conclusion_detail;
};
ProofTrace proof_chain(const ComplexNilAlgebra& a, const HermitianMetric& g,
                       const HermitianMetric& g_prime);

/// One catalog row of the feasibility cross-check: no valid non-abelian
/// entry may be simultaneously SKT-feasible and balanced-feasible.
struct SweepRow {
    std::string name;
    bool included = false;  // false: rejected at validation, see note
    std::string note;
    std::string skt_status;
    std::string balanced_status;
    bool abelian = false;
    bool consistent = true;
};
std::vector<SweepRow> theorem_sweep(
    const std::vector<std::pair<std::string, ComplexNilAlgebra>>& entries,
    const SearchOptions& opts = {});

}  // namespace nilherm
