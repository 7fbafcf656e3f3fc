#pragma once

#include "superkoszul/brackets.hpp"

namespace superkoszul {

/// Formal hbar-differential operator in normal form: a sum of terms
/// coefficient * phat_{g_1}...phat_{g_k}, with phat_g = -i hbar d/dg and all
/// coefficient functions to the left of all momentum operators. The slot
/// multi-index reuses Monomial over the chart's coordinate generators;
/// odd slots never repeat.
class HbarOp {
  public:
    HbarOp() = default;
    explicit HbarOp(ChartPtr chart) : chart_(std::move(chart)) {}

    static HbarOp zero(ChartPtr chart) { return HbarOp(std::move(chart)); }
    static HbarOp identity(ChartPtr chart);
    static HbarOp multiplication(SuperPoly f);
    /// phat_g for a single generator.
    static HbarOp momentum(ChartPtr chart, int gen_index);

    const ChartPtr& chart() const { return chart_; }
    const std::map<Monomial, SuperPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Parity = coefficient parity + slot parity, common to all terms;
    /// nullopt when mixed. Zero counts as even.
    std::optional<Parity> parity() const;

    HbarOp operator+(const HbarOp& o) const;
    HbarOp operator-(const HbarOp& o) const;
    HbarOp operator-() const;
    /// Operator composition, normal-ordered via the Heisenberg relation
    /// [phat_g, f] = -i hbar df/dg.
    HbarOp operator*(const HbarOp& o) const;
    HbarOp operator*(const Scalar& s) const;
    bool operator==(const HbarOp& o) const { return terms_ == o.terms_; }
    bool operator!=(const HbarOp& o) const { return !(*this == o); }

    void add_term(const Monomial& slots, const SuperPoly& coef);

    /// Action on a function.
    SuperPoly apply(const SuperPoly& f) const;

    /// Total degree = slot count + hbar degree of the coefficient, taken
    /// termwise; -1 for the zero operator.
    int max_total_degree() const;
    /// Part of the operator whose total degree equals n.
    HbarOp graded_component(int n) const;

    std::string to_string() const;

  private:
    ChartPtr chart_;
    std::map<Monomial, SuperPoly> terms_;
};

HbarOp compose(const HbarOp& A, const HbarOp& B);

/// AB - (-1)^{A~B~} BA for homogeneous factors (bilinear extension
/// otherwise); the result is checked to be divisible by hbar.
HbarOp commutator(const HbarOp& A, const HbarOp& B);

/// symb(L): hbar^0 part of each coefficient with phat_g replaced by the
/// momentum generator conjugate to g on the target chart.
SuperPoly principal_symbol(const HbarOp& L, ChartPtr target);

/// {f_1,...,f_n}_{L,hbar} = (-i hbar)^{-n} [...[L,f_1],...,f_n](1); the
/// n-fold commutator must be divisible by hbar^n (asserted).
SuperPoly quantum_bracket(const HbarOp& L, const std::vector<SuperPoly>& args);
/// The same mod hbar.
SuperPoly classical_bracket(const HbarOp& L, const std::vector<SuperPoly>& args);

/// -i hbar d = dx^a phat_{x^a} on a chart carrying tangent fibers.
HbarOp de_rham_operator(ChartPtr chart);

/// Phat = P(x, -i hbar d/d(dx)): antifiber factors of P become momentum
/// slots over the tangent fibers of `chart`.
HbarOp multivector_operator(const PStructure& P, ChartPtr chart);

/// Delta_P = -[d, Phat] on the tangent chart; squares to zero exactly when
/// [[P,P]] = 0.
HbarOp build_Delta_P(const PStructure& P, ChartPtr chart);

/// D_{d_P} = -i hbar d_P - i hbar F0 on the chart of P itself. F0 must be
/// odd with d_P(F0) = 0, which makes the operator square to zero.
HbarOp build_D_dP(const PStructure& P, const SuperPoly& F0);

}  // namespace superkoszul
