#pragma once

#include "superkoszul/hbarop.hpp"

namespace superkoszul {

/// The dual pair Pi TM / Pi T*M over a common base, bundled with the
/// cotangent charts of both sides (for symbols and classical MX), the
/// fibered product chart (for the pairing integral) and the bare base chart.
struct DualPair {
    ChartPtr E;        // x, dx
    ChartPtr Edual;    // x, x*
    ChartPtr TE;       // T*(Pi TM):  x, dx, p, pi_a
    ChartPtr TEdual;   // T*(Pi T*M): x, x*, p, pi^a
    ChartPtr fibered;  // E x_M E*:   x, dx, x*
    ChartPtr base;     // x

    static DualPair make(const std::vector<std::pair<std::string, Parity>>& bases);
};

/// Classical Mackenzie-Xu transformation between the cotangent charts
/// T*(Pi T*M) and T*(Pi TM). The substitution is an involution:
///   x -> x, p -> -p, x*_a <-> pi_a, pi^a <-> (-1)^{a~+1} dx^a,
/// so one function covers both directions; the direction is read off the
/// chart of `expr`, and `target` must be the opposite cotangent chart.
SuperPoly classical_mx(const SuperPoly& expr, ChartPtr target);

/// H_Sch = (-1)^{a~} pi^a p_a on T*(Pi T*M): the Hamiltonian whose derived
/// brackets reproduce the canonical Schouten bracket in our Poisson sign
/// conventions. Its classical MX image is H_d = dx^a p_a.
SuperPoly schouten_hamiltonian(ChartPtr chart);

/// Quantum Mackenzie-Xu transformation of an hbar-differential operator,
/// the adjoint with respect to the rho-weighted fiberwise Fourier pairing.
/// Computed by the generator rules
///   (f(x))* = f(x),   (phat_{x^a})* = -phat_{x^a} - (-i hbar) lambda_a,
///   (dx^a)* = (-1)^{a~+1} phat_{x*_a},   (phat_{dx^a})* = x*_a
/// (lambda_a = d log rho / dx^a), extended by (AB)* = (-1)^{A~B~} B* A*.
/// The direction is read off the chart of A; the result lives on the
/// opposite side of the pair.
HbarOp quantum_mx(const HbarOp& A, const DualPair& pair, const VolumeData& vol);

/// Fiber part of the pairing <f, g>_rho: the Berezin integral of
/// e^{-i/hbar dx^a x*_a} f(x,dx) g(x,x*) over all fiber variables, returned
/// as a function on the base chart. Requires a purely even base.
SuperPoly fiber_pairing(const SuperPoly& f, const SuperPoly& g,
                        const DualPair& pair);

/// True when h(x) lies in the span of total rho-divergences
/// rho^{-1} d/dx^a (rho k) = (d/dx^a + lambda_a) k over polynomials k of
/// degree <= degree_bound (default: deg h + 1). Such integrands drop out of
/// the formal base integral int rho(x) h(x) Dx.
bool is_rho_divergence(const SuperPoly& h, const VolumeData& vol,
                       int degree_bound = -1);

struct AdjointReport {
    int checks = 0;
    int failures = 0;
    bool ok() const { return checks > 0 && failures == 0; }
};

/// Checks <A f, g>_rho = (-1)^{A~ f~} <f, Astar g>_rho for every (f, g) in
/// the corpus, with both sides compared modulo rho-divergences of the base
/// integrand. Independent of the generator rules, so it serves as the
/// oracle for quantum_mx.
AdjointReport pairing_adjoint_oracle(
    const HbarOp& A, const HbarOp& Astar, const DualPair& pair,
    const VolumeData& vol,
    const std::vector<std::pair<SuperPoly, SuperPoly>>& corpus);

/// (Delta_P)* computed by the rule-based quantum MX and verified against
/// the closed form -i hbar d_P - i hbar delta_rho(P); throws on mismatch.
HbarOp delta_P_star(const PStructure& P, const DualPair& pair,
                    const VolumeData& vol);

/// delta_rho(P), with the cocycle property d_P(delta_rho(P)) = 0 asserted.
/// Its class modulo d_P-exact terms is the modular class of P.
SuperPoly modular_cocycle(const PStructure& P, const VolumeData& vol);

/// Searches for an even F with d_P(F) = delta_rho(P) by exact linear
/// algebra over the monomials of degree <= degree_bound. F is even because
/// d_P and delta_rho are both odd and P is even; nullopt certifies
/// non-existence at this bound.
std::optional<SuperPoly> solve_modular_potential(const PStructure& P,
                                                 const VolumeData& vol,
                                                 int degree_bound);

}  // namespace superkoszul
