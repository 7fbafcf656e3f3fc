#pragma once

#include "superkoszul/brackets.hpp"

namespace superkoszul {

enum class LVersion { Symmetric, Antisymmetric };

/// An n-ary multilinear operation on homogeneous SuperPoly arguments.
using Bracket = std::function<SuperPoly(const std::vector<SuperPoly>&)>;

/// A family of higher brackets indexed by arity. Missing arities count as
/// zero brackets. `parity_shift` is added to the polynomial parity of an
/// element to get its parity as an algebra element (1 for the antisymmetric
/// algebra read off a parity-reversed coordinate encoding).
struct BracketFamily {
    std::map<int, Bracket> ops;
    LVersion version = LVersion::Symmetric;
    int parity_shift = 0;

    bool has(int k) const { return ops.count(k) != 0; }
    SuperPoly apply(int k, const std::vector<SuperPoly>& args) const {
        return ops.at(k)(args);
    }
};

/// All (k,l)-shuffles of {0,...,k+l-1}: permutations keeping the relative
/// order of the first k and of the last l values. perm[j] is the index placed
/// at position j.
std::vector<std::vector<int>> shuffles(int k, int l);

/// Sign of a permutation given as an image list.
int perm_sign(const std::vector<int>& perm);

/// Koszul sign of rearranging (a_0,...,a_{n-1}) into (a_{perm[0]},...):
/// a factor -1 for every inversion of two odd elements.
int koszul_sign(const std::vector<int>& perm, const std::vector<Parity>& parities);

/// Left side of the higher Jacobi identity at n = args.size():
///   sum_{k+l=n} sum_{Sh(k,l)} c(sigma) l_{l+1}(l_k(a_sigma...), a_sigma...)
/// with c = eps(sigma) in the symmetric version and
/// c = sign(sigma) eps(sigma) (-1)^{kl} in the antisymmetric one.
/// `parities` are element parities; the overload derives them from the
/// arguments and the family's parity_shift.
SuperPoly jacobi_residual(const BracketFamily& fam,
                          const std::vector<SuperPoly>& args,
                          const std::vector<Parity>& parities);
SuperPoly jacobi_residual(const BracketFamily& fam,
                          const std::vector<SuperPoly>& args);

struct JacobiFailure {
    int n;
    std::vector<SuperPoly> args;
    SuperPoly residual;
};
struct JacobiReport {
    int checks = 0;
    std::vector<JacobiFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Runs jacobi_residual on every corpus tuple of size <= n_max.
JacobiReport check_higher_jacobi(const BracketFamily& fam,
                                 const std::vector<std::vector<SuperPoly>>& corpus,
                                 int n_max);

/// Polynomial vector field X = X^i d/dxi^i, coefficients on the left.
struct VectorField {
    ChartPtr chart;
    std::vector<SuperPoly> comp;

    static VectorField zero(ChartPtr chart);

    bool is_zero() const;
    /// Common parity of comp[i] + gen(i).parity; nullopt when mixed.
    /// Zero field counts as even.
    std::optional<Parity> parity() const;
    SuperPoly apply(const SuperPoly& f) const;

    bool operator==(const VectorField& o) const { return comp == o.comp; }
    bool operator!=(const VectorField& o) const { return !(*this == o); }
};

VectorField field_commutator(const VectorField& X, const VectorField& Y);

/// Elements of the coordinate space are encoded as linear polynomials
/// u = xi^i u^i with constant coefficients; this converts one to the constant
/// vector field u^i d/dxi^i.
VectorField constant_field(const SuperPoly& u);

/// l_k(u_1,...,u_k) = [...[Q,u_1],...,u_k](0) for constant fields u_i, the
/// symmetric-version brackets of an odd field Q. Result encoded as a linear
/// polynomial.
SuperPoly brackets_from_q(const VectorField& Q, const std::vector<SuperPoly>& args);

/// Antisymmetric-version brackets on the parity-reversed space: arguments x
/// with element parity = polynomial parity + 1, iota(x) = (-1)^{x~} x^i d/dxi^i,
///   iota(l_k(x_1,...,x_k)) = (-1)^{sum x_i~ (k-i)} [...[Q,iota(x_1)],...](0).
SuperPoly antisym_brackets_from_q(const VectorField& Q,
                                  const std::vector<SuperPoly>& args);

/// Symmetric-version bracket family of a field Q (arities 0..max_arity).
BracketFamily family_from_q(const VectorField& Q, int max_arity);

/// Reconstructs the homological field from a symmetric bracket family by
/// evaluating brackets on basis tuples,
///   Q^k = sum_n 1/n! sum_{(i_1..i_n)} s(i) xi^{i_1}...xi^{i_n} l_n(e_{i_1},...,e_{i_n})^k,
/// with the sign s fixed so that brackets_from_q inverts this exactly.
VectorField q_field_from_family(const BracketFamily& fam, ChartPtr chart,
                                int max_arity);

struct MorphismData {
    std::map<int, Bracket> taylor;  // phi_k
    BracketFamily source;           // l_k
    BracketFamily target;           // l'_k
};
struct MorphismFailure {
    int n;
    std::vector<SuperPoly> args;
    SuperPoly residual;
};
struct MorphismReport {
    int checks = 0;
    std::vector<MorphismFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Checks the L-infinity morphism relations at n = 1..n_max (n_max <= 3, the
/// explicitly displayed relations) on corpus tuples of even elements.
/// Requires flat source and target (zero 0-ary brackets); taylor entries
/// phi_1..phi_{n_max} must be present.
MorphismReport check_linfty_morphism(const MorphismData& md,
                                     const std::vector<std::vector<SuperPoly>>& corpus,
                                     int n_max);

/// Evaluates f at a numeric point (component per generator); components at
/// odd generators must vanish.
SuperPoly evaluate_at(const SuperPoly& f, const std::vector<Rational>& point);

/// k-th polarization of the map with components f, applied to even vectors
/// given as numeric component lists. Multilinear symmetric; its diagonal is
/// k! times the degree-k Taylor part of f.
std::vector<SuperPoly> polarize_eval(const std::vector<SuperPoly>& f, int k,
                                     const std::vector<std::vector<Rational>>& args);

std::function<std::vector<SuperPoly>(const std::vector<std::vector<Rational>>&)>
polarize(std::vector<SuperPoly> f, int k);

}  // namespace superkoszul
