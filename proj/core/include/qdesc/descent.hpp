// Quadratic descent of totally decomposable algebras with orthogonal
// involution: the inseparable criterion and construction, separable
// quaternion descent, the general separable recursion, and the closing
// no-descent example.
#pragma once

#include "qdesc/involution.hpp"

namespace qdesc {

enum class VerdictKind { Descends, NoDescent, Unknown };

// [a, b)_K ~ [c, b)_K established either by the exact Artin-Schreier
// equation a + c + D^2 b = wp(W) over K, or (square slot) by both sides
// splitting.
struct CertSepWitness {
    SepCtx K;
    KElem a;
    RatFun c, b; // over the base field of K
    KElem D, W;
    bool both_split = false;
};

// [a, b)_L ~ [c, b)_L over the inseparable layer L = F_q(s), t = s^2:
// a + embed(c) = wp(W) with W in L.
struct CertInsepWitness {
    RatCtx L;
    RatFun a;       // over L
    RatFun c, b;    // over the base (functions of t)
    RatFun W;       // over L
};

struct DescentCertificate {
    std::vector<CertSepWitness> sep_steps;
    std::vector<CertInsepWitness> insep_steps;
    std::vector<KElem> slot_scales; // z_i with slot_i' = z_i^2 * slot_i (reslot record)
};

bool verify_cert_witnesses(const DescentCertificate& cert);

struct SepDescentResult {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<TDInvolution<RatCtx>> descended;
    DescentCertificate cert;
    std::string detail; // obstruction or exhausted stage
    std::optional<InvariantVector<RatCtx>> cor_obstruction;
};

// ------------------------------------------------------------- inseparable

// A lives over X.above = F_q(s); descents target X.base = F_q(t), t = s^2.

// Theorem condition (3): every subset product of the slots lies in F.
bool insep_descent_test(const InsepCtx& X, const TDInvolution<RatCtx>& A);
// Violating subset mask when the test fails (0 when it passes).
size_t insep_descent_violation(const InsepCtx& X, const TDInvolution<RatCtx>& A);

// Theorem condition (4), by an independent route: the Q-set of the Pfister
// invariant over K admits a spanning set inside F (all echelon rows have
// zero s-coordinate).
bool insep_pfister_descent_test(const InsepCtx& X, const TDInvolution<RatCtx>& A);

struct InsepDescentResult {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<TDInvolution<RatCtx>> descended; // over X.base
    DescentCertificate cert;
    size_t violating_subset = 0;
    std::string detail;
};
InsepDescentResult insep_descent_construct(const InsepCtx& X, const TDInvolution<RatCtx>& A);
bool verify_insep_descent(const InsepCtx& X, const TDInvolution<RatCtx>& A,
                          const TDInvolution<RatCtx>& B, const DescentCertificate& cert);

// --------------------------------------------------------------- separable

struct QuatSepResult {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<RatFun> c; // descended a-parameter; the slot is preserved
    std::optional<CertSepWitness> witness;
    std::string detail;
    std::optional<InvariantVector<RatCtx>> cor_obstruction;
};
// Descent of ([a, b), sigma_0) over K with b in F^x (the Alt-generator's
// square); the descended factor is (c, b).
QuatSepResult quat_sep_descent(const SepCtx& K, const KElem& a, const RatFun& b, int height_bound);

// z with z^2 * beta in F^x, when the square class of beta meets F; the
// closed form is complete, so nullopt certifies there is none.
std::optional<KElem> square_class_meets_base(const SepCtx& K, const KElem& beta);

// Per-slot reslotting via square-class scaling; a-parameters unchanged.
struct ReslotResult {
    TDInvolution<SepCtx> A;            // slots now embedded from F
    std::vector<KElem> scales;         // per factor
    std::vector<RatFun> base_slots;    // slots as base elements
};
std::optional<ReslotResult> reslot(const SepCtx& K, const TDInvolution<SepCtx>& A,
                                   const std::vector<std::vector<RatFun>>& slot_candidates = {});

// S-constants of the conic F-algebra from the proof of the Phi-descent
// proposition: slot beta + gamma*eta contributes {gamma, beta + gamma*delta}.
struct PhiSConstruction {
    std::vector<RatFun> constants; // 2n values, zeros possible
    bool valid = false;            // Q-set of the constants equals Q(Pf(A))
};
PhiSConstruction phi_S_construct(const SepCtx& K, const TDInvolution<SepCtx>& A);

SepDescentResult sep_descent(const SepCtx& K, const TDInvolution<SepCtx>& A, int height_bound);

bool verify_sep_descent(const SepCtx& K, const TDInvolution<SepCtx>& A,
                        const TDInvolution<RatCtx>& B, const DescentCertificate& cert);

// ------------------------------------------------------------ the example

// The anisotropic single-factor (M_2(K), sigma) with slot beta = lambda +
// delta + eta: condition (4) holds yet no descent exists.
struct CounterexampleReport {
    bool cor_splits = false;
    bool phi_descends = false;
    std::vector<RatFun> s_constants;
    bool descends = false;             // always false here
    RatFun obstruction;                // (p+q+q delta)/q, certified non-square
    KElem slot;
};
CounterexampleReport paper_counterexample(const RatCtx& F, const RatFun& lambda, const RatFun& delta);

} // namespace qdesc
