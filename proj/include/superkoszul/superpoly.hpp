#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "superkoszul/chart.hpp"

namespace superkoszul {

/// Sorted (generator index, exponent) list; odd generators have exponent 1.
using Monomial = std::vector<std::pair<int, int>>;

Parity monomial_parity(const Chart& chart, const Monomial& m);
int monomial_degree(const Monomial& m);

/// Canonical-form product of two monomials. Returns the merged monomial and
/// the Koszul sign (+1/-1), or nullopt when an odd generator repeats.
std::optional<std::pair<Monomial, int>> monomial_mul(const Chart& chart,
                                                     const Monomial& a,
                                                     const Monomial& b);

/// Z2-graded polynomial over a chart with Scalar coefficients, kept in
/// canonical form (monomials sorted in chart order, no zero coefficients,
/// odd generators never squared).
class SuperPoly {
  public:
    SuperPoly() = default;
    explicit SuperPoly(ChartPtr chart) : chart_(std::move(chart)) {}

    static SuperPoly zero(ChartPtr chart) { return SuperPoly(std::move(chart)); }
    static SuperPoly constant(ChartPtr chart, Scalar c);
    static SuperPoly generator(ChartPtr chart, int gen_index);
    static SuperPoly generator(ChartPtr chart, const std::string& name);

    const ChartPtr& chart() const { return chart_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Parity of a homogeneous polynomial; nullopt for mixed parity.
    /// Zero counts as even.
    std::optional<Parity> parity() const;
    bool is_even() const { return parity() == std::optional<Parity>(0); }
    bool is_odd() const { return parity() == std::optional<Parity>(1); }

    /// Part of the given parity.
    SuperPoly parity_part(Parity p) const;

    SuperPoly operator+(const SuperPoly& o) const;
    SuperPoly operator-(const SuperPoly& o) const;
    SuperPoly operator-() const;
    SuperPoly operator*(const SuperPoly& o) const;
    SuperPoly operator*(const Scalar& s) const;
    bool operator==(const SuperPoly& o) const;
    bool operator!=(const SuperPoly& o) const { return !(*this == o); }

    /// Coefficient of a monomial (zero scalar if absent).
    Scalar coefficient(const Monomial& m) const;

    /// Total polynomial degree of the highest term.
    int degree() const;
    /// Highest degree counted over generators satisfying the predicate.
    int degree_in(const std::function<bool(const Generator&)>& pred) const;
    /// True if some monomial involves a generator satisfying the predicate.
    bool depends_on(const std::function<bool(const Generator&)>& pred) const;
    bool depends_on_gen(int gen_index) const;

    /// Part of the polynomial whose degree in `pred`-generators equals d.
    SuperPoly graded_part_in(const std::function<bool(const Generator&)>& pred,
                             int d) const;

    /// Apply Scalar::mod_hbar termwise.
    SuperPoly mod_hbar() const;
    /// Substitute t = 1 termwise.
    SuperPoly fold_t() const;
    /// True if every coefficient is divisible by hbar^n.
    bool divisible_by_hbar(int n) const;

    void add_term(Monomial m, Scalar c);

    std::string to_string() const;

  private:
    void check_chart(const SuperPoly& o) const;

    ChartPtr chart_;
    std::map<Monomial, Scalar> terms_;
};

/// Left derivative with respect to a generator.
SuperPoly left_derivative(const SuperPoly& f, int gen_index);
SuperPoly left_derivative(const SuperPoly& f, const std::string& name);

/// Algebra homomorphism: replaces the listed generators by the given values
/// (which live on `target`); every other generator must exist by name in the
/// target chart and is kept fixed. Values must match the parity of the
/// replaced generator.
SuperPoly substitute(const SuperPoly& f, const std::map<int, SuperPoly>& assignment,
                     ChartPtr target);
/// Same-chart substitution.
SuperPoly substitute(const SuperPoly& f, const std::map<int, SuperPoly>& assignment);

/// Iterated Berezin integral over odd generators, with the convention
/// \int D\theta \theta = 1 and the integrals applied innermost-first, i.e.
/// berezin_integral(f, {a, b}) = \int Da \int Db f.
SuperPoly berezin_integral(const SuperPoly& f, const std::vector<int>& odd_gens);

/// Finite exponential sum; requires a nilpotent argument (zero body) or one
/// whose scalar part raises the hbar/t degree so that truncation terminates.
SuperPoly exp_nilpotent(const SuperPoly& f);

}  // namespace superkoszul
