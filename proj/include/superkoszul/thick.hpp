#pragma once

#include "superkoszul/mx.hpp"

namespace superkoszul {

/// Generating function of a thick morphism M1 -> M2. S lives on a joint
/// chart carrying the source coordinates (same names as in `source`) and
/// one conjugate momentum generator per target coordinate.
struct GenFunction {
    SuperPoly S;
    ChartPtr source;
    ChartPtr target;
    std::vector<int> q_index;  // per target generator: its momentum in S's chart

    static GenFunction make(SuperPoly S, ChartPtr source, ChartPtr target,
                            std::vector<int> q_index);
};

/// Pullback by a thick morphism:
///   Phi*[g](x) = g(y) + S(x,q) - y^i q_i,
///   q_i = dg/dy^i(y),  y^i = (-1)^{i~} dS/dq_i(x,q),
/// solved by fixed-point iteration graded by the t marker on the momentum
/// degree and truncated at t-order `order`; t is folded to 1 at the end.
/// g must be even (even thick morphism acting on even functions).
SuperPoly thick_pullback(const GenFunction& gf, const SuperPoly& g, int order);

struct PhiReport {
    SuperPoly residual;
    bool ok() const { return residual.is_zero(); }
};

/// Phi-relatedness of Hamiltonians: H1(x, dS/dx) = H2((-1)^{q~} dS/dq, q).
/// H1 lives on the cotangent chart of the source, H2 on the cotangent chart
/// of the target; S must be even.
PhiReport check_phi_related(const SuperPoly& H1, const SuperPoly& H2,
                            const GenFunction& gf);

/// The anchor a: Pi T*M -> Pi TM of the cotangent L-infinity algebroid as a
/// thick morphism: S = x^a p_a + (-1)^{a~+1} dP/dx*_a(x,x*) pi_a.
GenFunction anchor_genfun(const PStructure& P, const DualPair& pair);

/// Its dual a^v: Pi T*M ~~> Pi TM, obtained by the MX transformation of the
/// anchor's Lagrangian equations:
///   S* = x^a p_a + (-1)^{a~} dP/dx*_a(x,pi) x*_a.
GenFunction dual_genfun(const PStructure& P, const DualPair& pair);

/// Substitution pullback a*: fun(Pi TM) -> fun(Pi T*M) along the anchor,
/// dx^a -> (-1)^{a~+1} dP/dx*_a. Chain map up to sign when P is flat:
/// d_P o a* = -a* o d in our bracket conventions.
SuperPoly classical_anchor_pullback(const PStructure& P, const SuperPoly& omega,
                                    const DualPair& pair);

/// Fiberwise integral operator of quantum-pullback type: acts as
///   f -> norm * int_{slots} e^{(i/hbar)(phase - pair_term)} f,
/// with the Dbar slots carrying the normalization
/// (i hbar)^m (-1)^{m(m+1)/2} for m odd integration variables. Fields are
/// public so tests can pin the conventions on hand-built kernels.
struct KernelOperator {
    DualPair pair;
    ChartPtr joint;
    SuperPoly phase;      // S(u1; w2)
    SuperPoly pair_term;  // subtracted u w term
    bool dualized = false;
    std::vector<int> plain_slots;
    std::vector<int> dbar_slots;
    std::map<int, int> domain_to_joint;
    std::map<int, int> joint_to_codomain;
    ChartPtr domain;
    ChartPtr codomain;
};

SuperPoly quantum_pullback(const KernelOperator& K, const SuperPoly& f);

/// a* written as an integral operator fun(Pi TM) -> fun(Pi T*M) with kernel
/// phase (-1)^{a~+1} dP/dx*_a(x,x*) y*_a and pairing term dy^a y*_a.
KernelOperator anchor_kernel(const PStructure& P, const DualPair& pair);

/// The adjoint kernel per the slot-swapping duality theorem: same phase,
/// with integration moved to the (dx, x*) slots and pairing term dx^a x*_a.
/// An involution.
KernelOperator quantum_dual(const KernelOperator& K);

struct IntertwineReport {
    int checks = 0;
    int failures = 0;
    bool precondition_ok = false;
    SuperPoly precondition_residual;  // delta_rho(P) - d_P(F), or delta_rho(P)
    bool ok() const { return precondition_ok && checks > 0 && failures == 0; }
};

/// Verifies the quantum intertwining I o Delta_P = (hbar^2 delta_rho) o I
/// (the sign matching Delta_P = +hbar^2 [d, i(P)] at leading order) on the
/// corpus, where I = (a*)^star when delta_rho(P) = 0, and
/// I = (e^{-F} a*)^star when F is supplied with delta_rho(P) = d_P(F)
/// (F must be even and nilpotent). Corpus entries live on pair.E.
IntertwineReport check_intertwining(const PStructure& P, const DualPair& pair,
                                    const VolumeData& vol,
                                    const std::optional<SuperPoly>& F,
                                    const std::vector<SuperPoly>& corpus);

}  // namespace superkoszul
