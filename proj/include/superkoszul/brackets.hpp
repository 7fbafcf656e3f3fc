#pragma once

#include "superkoszul/superpoly.hpp"

namespace superkoszul {

/// Volume element on the base, stored as log rho. Even, base generators only.
struct VolumeData {
    SuperPoly log_rho;

    static VolumeData trivial(ChartPtr chart) {
        return {SuperPoly::zero(std::move(chart))};
    }
    static VolumeData make(SuperPoly log_rho);
};

/// Conjugate (coordinate, momentum) generator index pairs present on the
/// chart, over all copies.
std::vector<std::pair<int, int>> momentum_pairs(const Chart& chart);

/// Drop every monomial containing a generator satisfying `pred` (restriction
/// of those generators to zero).
SuperPoly set_zero(const SuperPoly& f,
                   const std::function<bool(const Generator&)>& pred);

bool is_momentum_role(Role r);

/// Canonical even Poisson bracket on a cotangent chart, summed over all
/// conjugate pairs. With u the coordinate, p_u its momentum, u~ the
/// coordinate parity and H homogeneous:
///   {H,G} = sum_u (-1)^{u~(H~+1)} dH/dp_u dG/du - (-1)^{u~ H~} dH/du dG/dp_u
/// Inhomogeneous H handled by bilinear extension.
SuperPoly canonical_poisson(const SuperPoly& H, const SuperPoly& G);

/// Canonical odd Poisson (Schouten) bracket over pairs (x^a, x*_a):
///   [[F,G]] = sum_a (-1)^{a~(F~+1)} (dF/dx*_a dG/dx^a
///                                    + (-1)^{F~} dF/dx^a dG/dx*_a)
SuperPoly canonical_schouten(const SuperPoly& F, const SuperPoly& G);

/// Even multivector P(x, x*) with its self-bracket.
struct PStructure {
    SuperPoly P;
    SuperPoly self_bracket;
    bool is_pinfty = false;

    static PStructure make(SuperPoly P);
};

/// Odd Hamiltonian H(x, p) with its self-bracket.
struct OddHamiltonian {
    SuperPoly H;
    SuperPoly self_bracket;
    bool is_sinfty = false;

    static OddHamiltonian make(SuperPoly H);
};

/// {f_1,...,f_k}_P = [[...[[P,f_1]],...,f_k]] restricted to x* = 0.
/// Arguments must not depend on antifiber generators.
SuperPoly higher_derived_bracket_P(const PStructure& P,
                                   const std::vector<SuperPoly>& args);

/// {f_1,...,f_k}_H = {...{H,f_1},...,f_k} restricted to zero momenta.
/// Arguments must not depend on momentum generators.
SuperPoly higher_derived_bracket_H(const OddHamiltonian& H,
                                   const std::vector<SuperPoly>& args);

/// H_d = sum_a dx^a p_a on a chart carrying tangent fibers and base momenta.
SuperPoly de_rham_hamiltonian(ChartPtr chart, int copy = 0);

/// de Rham differential of a form: dx^a dF/dx^a (the unary derived bracket
/// of H_d).
SuperPoly de_rham(const SuperPoly& omega);

/// The odd Hamiltonian H_P = -{H_d, P(x,pi)} generating the higher Koszul
/// brackets; `chart` must carry (x, dx, p, pi). P is transported by the
/// substitution x*_a -> pi_a.
SuperPoly koszul_hamiltonian(const PStructure& P, ChartPtr chart);

/// Components P^{ab} of a bivector P = 1/2 P^{ab} x*_b x*_a, extracted via
/// P^{ab} = -(-1)^{a~} {x^a,x^b}_P and transported to `target` by name.
std::map<std::pair<int, int>, SuperPoly> bivector_components(const PStructure& P,
                                                             ChartPtr target);

/// Interior product i(P) = 1/2 P^{ab} d/d(dx^b) d/d(dx^a) with a bivector,
/// acting on a form.
SuperPoly interior_product(const PStructure& P, const SuperPoly& omega);

/// Classical binary Koszul bracket of two forms on the (x, dx) chart,
/// generated BV-style by [d, i(P)]:
///   [a,b]_P = D(ab) - D(a) b - (-1)^{a~} a D(b),  D = [d, i(P)].
/// Requires a bivector P (purely quadratic in x*). On generators this gives
/// [x^a,x^b] = 0, [x^a,dx^b] = -P^{ab}, [dx^a,dx^b] = dP^{ab}.
SuperPoly koszul_binary(const PStructure& P, const SuperPoly& alpha,
                        const SuperPoly& beta);

/// Higher Koszul k-bracket of forms on the (x, dx, p, pi) chart.
SuperPoly koszul_bracket(const PStructure& P, ChartPtr chart,
                         const std::vector<SuperPoly>& args);

/// Lichnerowicz differential d_P(F) = [[P, F]].
SuperPoly lichnerowicz(const PStructure& P, const SuperPoly& F);

/// Divergence of a multivector with respect to the volume element:
///   delta_rho(T) = sum_a (-1)^{a~} (d/dx^a + lambda_a)(dT/dx*_a)
/// with lambda_a = d(log rho)/dx^a.
SuperPoly divergence(const SuperPoly& T, const VolumeData& vol);

/// Residual of the generating property Delta(ab) = Delta(a) b
/// + (-1)^{a~} a Delta(b) + [a,b] for homogeneous a; zero iff Delta
/// generates the bracket on this pair.
SuperPoly bv_residual(
    const std::function<SuperPoly(const SuperPoly&)>& Delta,
    const std::function<SuperPoly(const SuperPoly&, const SuperPoly&)>& bracket,
    const SuperPoly& a, const SuperPoly& b);

}  // namespace superkoszul
