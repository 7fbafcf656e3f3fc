#include "superkoszul/mx.hpp"

#include "superkoszul/linsolve.hpp"

namespace superkoszul {

DualPair DualPair::make(
    const std::vector<std::pair<std::string, Parity>>& bases) {
    auto with_bases = [&]() {
        ChartBuilder b;
        for (const auto& [n, p] : bases) b.base(n, p);
        return b;
    };
    DualPair out;
    out.E = with_bases().with_tangent_fibers().build();
    out.Edual = with_bases().with_antifibers().build();
    out.TE = with_bases()
                 .with_tangent_fibers()
                 .with_base_momenta()
                 .with_tangent_momenta()
                 .build();
    out.TEdual = with_bases()
                     .with_antifibers()
                     .with_base_momenta()
                     .with_antifiber_momenta()
                     .build();
    out.fibered = with_bases().with_tangent_fibers().with_antifibers().build();
    out.base = with_bases().build();
    return out;
}

SuperPoly classical_mx(const SuperPoly& expr, ChartPtr target) {
    const Chart& src = *expr.chart();
    std::map<int, SuperPoly> sub;
    for (int i = 0; i < src.size(); ++i) {
        const Generator& g = src.gen(i);
        Role image;
        bool negate = false;
        switch (g.role) {
            case Role::Base:
                image = Role::Base;
                break;
            case Role::BaseMomentum:
                image = Role::BaseMomentum;
                negate = true;
                break;
            case Role::Antifiber:
                image = Role::TangentFiberMomentum;
                break;
            case Role::TangentFiberMomentum:
                image = Role::Antifiber;
                break;
            // pi^a <-> (-1)^{a~+1} dx^a; both carry parity a~+1, so the
            // sign is -1 exactly when the generator itself is odd.
            case Role::AntifiberMomentum:
                image = Role::TangentFiber;
                negate = g.parity == 1;
                break;
            case Role::TangentFiber:
                image = Role::AntifiberMomentum;
                negate = g.parity == 1;
                break;
            default:
                throw Error("classical_mx: no MX image for generator '" +
                            g.name + "'");
        }
        int j = target->find(image, g.base_index, g.copy);
        if (j < 0)
            throw Error("classical_mx: target chart lacks the image of '" +
                        g.name + "'");
        SuperPoly v = SuperPoly::generator(target, j);
        sub.emplace(i, negate ? -v : v);
    }
    return substitute(expr, sub, target);
}

SuperPoly schouten_hamiltonian(ChartPtr chart) {
    SuperPoly out(chart);
    auto pis = chart->indices(Role::AntifiberMomentum, 0);
    if (pis.empty())
        throw Error("schouten_hamiltonian: chart has no antifiber momenta");
    for (int pi : pis) {
        const Generator& g = chart->gen(pi);
        int p = chart->find(Role::BaseMomentum, g.base_index, 0);
        int x = chart->find(Role::Base, g.base_index, 0);
        if (p < 0 || x < 0)
            throw Error("schouten_hamiltonian: chart lacks base momenta");
        SuperPoly term =
            SuperPoly::generator(chart, pi) * SuperPoly::generator(chart, p);
        if (chart->gen(x).parity % 2) term = -term;
        out = out + term;
    }
    return out;
}

namespace {

/// lambda_a on `chart` for every base coordinate, indexed by base_index.
std::vector<SuperPoly> log_rho_gradient(const VolumeData& vol, ChartPtr chart) {
    SuperPoly lr = vol.log_rho.is_zero() ? SuperPoly::zero(chart)
                                         : substitute(vol.log_rho, {}, chart);
    std::vector<SuperPoly> out(static_cast<size_t>(chart->base_count()),
                               SuperPoly::zero(chart));
    for (int x : chart->indices(Role::Base, 0))
        out[static_cast<size_t>(chart->gen(x).base_index)] =
            left_derivative(lr, x);
    return out;
}

struct ElementaryFactor {
    Parity parity;  // parity of the original factor (star preserves it)
    HbarOp star;
};

/// Star of multiplication by a single generator.
ElementaryFactor star_mult(const Chart& src, int g, ChartPtr dst) {
    const Generator& gen = src.gen(g);
    switch (gen.role) {
        case Role::Base: {
            int j = dst->find(Role::Base, gen.base_index, gen.copy);
            return {gen.parity,
                    HbarOp::multiplication(SuperPoly::generator(dst, j))};
        }
        case Role::TangentFiber: {
            // (dx^a)* = (-1)^{a~+1} phat_{x*_a}
            int j = dst->find(Role::Antifiber, gen.base_index, gen.copy);
            HbarOp op = HbarOp::momentum(dst, j);
            if (gen.parity == 1) op = -op;
            return {gen.parity, op};
        }
        case Role::Antifiber: {
            // (x*_a)* = phat_{dx^a}
            int j = dst->find(Role::TangentFiber, gen.base_index, gen.copy);
            return {gen.parity, HbarOp::momentum(dst, j)};
        }
        default:
            throw Error("quantum_mx: cannot transform multiplication by '" +
                        gen.name + "'");
    }
}

/// Star of phat over a single generator.
ElementaryFactor star_momentum(const Chart& src, int g, ChartPtr dst,
                               const std::vector<SuperPoly>& lambda) {
    const Generator& gen = src.gen(g);
    switch (gen.role) {
        case Role::Base: {
            // (phat_{x^a})* = -phat_{x^a} - (-i hbar) lambda_a
            int j = dst->find(Role::Base, gen.base_index, gen.copy);
            HbarOp op = -HbarOp::momentum(dst, j) -
                        HbarOp::multiplication(
                            lambda[static_cast<size_t>(gen.base_index)] *
                            Scalar::neg_i_hbar_pow(1));
            return {gen.parity, op};
        }
        case Role::TangentFiber: {
            // (phat_{dx^a})* = x*_a
            int j = dst->find(Role::Antifiber, gen.base_index, gen.copy);
            return {gen.parity,
                    HbarOp::multiplication(SuperPoly::generator(dst, j))};
        }
        case Role::Antifiber: {
            // (phat_{x*_a})* = (-1)^{a~+1} dx^a
            int j = dst->find(Role::TangentFiber, gen.base_index, gen.copy);
            SuperPoly v = SuperPoly::generator(dst, j);
            if (gen.parity == 1) v = -v;
            return {gen.parity, HbarOp::multiplication(v)};
        }
        default:
            throw Error("quantum_mx: cannot transform the momentum of '" +
                        gen.name + "'");
    }
}

}  // namespace

HbarOp quantum_mx(const HbarOp& A, const DualPair& pair, const VolumeData& vol) {
    ChartPtr dst;
    if (A.chart()->same_as(*pair.E))
        dst = pair.Edual;
    else if (A.chart()->same_as(*pair.Edual))
        dst = pair.E;
    else
        throw Error("quantum_mx: operator chart matches neither side of the pair");
    const Chart& src = *A.chart();
    std::vector<SuperPoly> lambda = log_rho_gradient(vol, dst);

    HbarOp out(dst);
    for (const auto& [slots, coef] : A.terms()) {
        for (const auto& [cm, s] : coef.terms()) {
            // The term is the composition M_{g_1} ... M_{g_r} phat_{s_1} ...
            // phat_{s_k}; star reverses the factors with the Koszul sign
            // (-1)^{sum_{i<j} F~_i F~_j}.
            std::vector<ElementaryFactor> fs;
            for (const auto& [g, e] : cm)
                for (int k = 0; k < e; ++k) fs.push_back(star_mult(src, g, dst));
            for (const auto& [g, e] : slots)
                for (int k = 0; k < e; ++k)
                    fs.push_back(star_momentum(src, g, dst, lambda));
            int odd = 0;
            for (const auto& f : fs) odd += f.parity;
            HbarOp prod = HbarOp::identity(dst);
            for (auto it = fs.rbegin(); it != fs.rend(); ++it)
                prod = prod * it->star;
            Scalar c = s;
            if ((odd * (odd - 1) / 2) % 2) c = -c;
            out = out + prod * c;
        }
    }
    return out;
}

SuperPoly fiber_pairing(const SuperPoly& f, const SuperPoly& g,
                        const DualPair& pair) {
    ChartPtr c = pair.fibered;
    for (int x : c->indices(Role::Base, 0))
        if (c->gen(x).parity % 2)
            throw Error("fiber_pairing: base must be purely even");
    SuperPoly ft = substitute(f, {}, c);
    SuperPoly gt = substitute(g, {}, c);
    SuperPoly phase(c);
    for (int dx : c->indices(Role::TangentFiber, 0)) {
        int xs = c->find(Role::Antifiber, c->gen(dx).base_index, 0);
        phase = phase +
                SuperPoly::generator(c, dx) * SuperPoly::generator(c, xs);
    }
    Scalar minus_i_over_hbar = -(Scalar::imag_unit() * Scalar::hbar(-1));
    SuperPoly u = exp_nilpotent(phase * minus_i_over_hbar) * ft * gt;
    std::vector<int> fibers = c->indices(Role::TangentFiber, 0);
    for (int xs : c->indices(Role::Antifiber, 0)) fibers.push_back(xs);
    return substitute(berezin_integral(u, fibers), {}, pair.base);
}

namespace {

/// Splits a polynomial by the (hbar, t) key of its scalar coefficients;
/// every component carries plain Gaussian-rational coefficients.
std::map<Scalar::Key, SuperPoly> split_by_key(const SuperPoly& p) {
    std::map<Scalar::Key, SuperPoly> out;
    for (const auto& [m, s] : p.terms())
        for (const auto& [key, v] : s.terms()) {
            auto [it, fresh] = out.emplace(key, SuperPoly(p.chart()));
            it->second.add_term(m, Scalar::from_gauss(v));
        }
    return out;
}

/// Gaussian-rational coefficients c_j with sum c_j cols[j] = target, or
/// nullopt. All scalars involved must be key-free.
std::optional<std::vector<GaussRat>> express_in_span(
    const SuperPoly& target, const std::vector<SuperPoly>& cols) {
    std::map<Monomial, int> row_of;
    for (const auto& [m, s] : target.terms()) row_of.emplace(m, 0);
    for (const auto& col : cols)
        for (const auto& [m, s] : col.terms()) row_of.emplace(m, 0);
    int rows = 0;
    for (auto& [m, r] : row_of) {
        r = rows;
        rows += 2;  // real and imaginary part
    }
    std::vector<std::vector<Rational>> A(
        static_cast<size_t>(rows),
        std::vector<Rational>(cols.size() * 2, Rational(0)));
    std::vector<Rational> b(static_cast<size_t>(rows), Rational(0));
    for (const auto& [m, s] : target.terms()) {
        GaussRat v = s.constant_value();
        b[static_cast<size_t>(row_of[m])] = v.re;
        b[static_cast<size_t>(row_of[m]) + 1] = v.im;
    }
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [m, s] : cols[j].terms()) {
            GaussRat v = s.constant_value();
            size_t r = static_cast<size_t>(row_of[m]);
            // (c_re + i c_im)(v_re + i v_im)
            A[r][2 * j] = v.re;
            A[r][2 * j + 1] = -v.im;
            A[r + 1][2 * j] = v.im;
            A[r + 1][2 * j + 1] = v.re;
        }
    auto sol = solve_linear(std::move(A), std::move(b));
    if (!sol) return std::nullopt;
    std::vector<GaussRat> out(cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        out[j] = {(*sol)[2 * j], (*sol)[2 * j + 1]};
    return out;
}

void enum_monomials(const Chart& chart, int gen, int budget, Monomial& cur,
                    std::vector<Monomial>& out) {
    if (gen == chart.size()) {
        out.push_back(cur);
        return;
    }
    enum_monomials(chart, gen + 1, budget, cur, out);
    int cap = chart.gen(gen).parity % 2 ? 1 : budget;
    for (int e = 1; e <= cap; ++e) {
        cur.push_back({gen, e});
        enum_monomials(chart, gen + 1, budget - e, cur, out);
        cur.pop_back();
    }
}

std::vector<Monomial> monomials_up_to(const Chart& chart, int degree) {
    std::vector<Monomial> out;
    Monomial cur;
    enum_monomials(chart, 0, degree, cur, out);
    return out;
}

}  // namespace

bool is_rho_divergence(const SuperPoly& h, const VolumeData& vol,
                       int degree_bound) {
    if (h.is_zero()) return true;
    ChartPtr chart = h.chart();
    if (h.depends_on([](const Generator& g) { return g.role != Role::Base; }))
        throw Error("is_rho_divergence: integrand must depend on the base only");
    if (degree_bound < 0) degree_bound = h.degree() + 1;
    std::vector<SuperPoly> lambda = log_rho_gradient(vol, chart);
    std::vector<SuperPoly> cols;
    for (const Monomial& m : monomials_up_to(*chart, degree_bound)) {
        bool base_only = true;
        for (const auto& [g, e] : m)
            base_only = base_only && chart->gen(g).role == Role::Base;
        if (!base_only) continue;
        SuperPoly k(chart);
        k.add_term(m, Scalar::one());
        for (int x : chart->indices(Role::Base, 0)) {
            SuperPoly col =
                left_derivative(k, x) +
                lambda[static_cast<size_t>(chart->gen(x).base_index)] * k;
            if (!col.is_zero()) cols.push_back(col);
        }
    }
    for (const auto& [key, comp] : split_by_key(h))
        if (!express_in_span(comp, cols)) return false;
    return true;
}

AdjointReport pairing_adjoint_oracle(
    const HbarOp& A, const HbarOp& Astar, const DualPair& pair,
    const VolumeData& vol,
    const std::vector<std::pair<SuperPoly, SuperPoly>>& corpus) {
    auto ap = A.parity();
    if (!ap) throw Error("pairing_adjoint_oracle: operator must be homogeneous");
    AdjointReport rep;
    for (const auto& [f, g] : corpus) {
        auto fp = f.parity();
        if (!fp)
            throw Error("pairing_adjoint_oracle: corpus entries must be homogeneous");
        SuperPoly lhs = fiber_pairing(A.apply(f), g, pair);
        SuperPoly rhs = fiber_pairing(f, Astar.apply(g), pair);
        if ((*ap * *fp) % 2) rhs = -rhs;
        ++rep.checks;
        if (!is_rho_divergence(lhs - rhs, vol)) ++rep.failures;
    }
    return rep;
}

HbarOp delta_P_star(const PStructure& P, const DualPair& pair,
                    const VolumeData& vol) {
    if (!P.is_pinfty)
        throw Error("delta_P_star: P is not a P-infinity structure");
    if (!P.P.chart()->same_as(*pair.Edual))
        throw Error("delta_P_star: P must live on the dual side of the pair");
    HbarOp rule = quantum_mx(build_Delta_P(P, pair.E), pair, vol);
    HbarOp closed = build_D_dP(P, divergence(P.P, vol));
    if (rule != closed)
        throw Error(
            "delta_P_star: rule-based transform disagrees with "
            "-i hbar d_P - i hbar delta_rho(P)");
    return rule;
}

SuperPoly modular_cocycle(const PStructure& P, const VolumeData& vol) {
    if (!P.is_pinfty)
        throw Error("modular_cocycle: P is not a P-infinity structure");
    SuperPoly mu = divergence(P.P, vol);
    if (!lichnerowicz(P, mu).is_zero())
        throw Error("modular_cocycle: delta_rho(P) is not d_P-closed");
    return mu;
}

std::optional<SuperPoly> solve_modular_potential(const PStructure& P,
                                                 const VolumeData& vol,
                                                 int degree_bound) {
    ChartPtr chart = P.P.chart();
    SuperPoly mu = modular_cocycle(P, vol);
    if (mu.is_zero()) return SuperPoly::zero(chart);
    std::vector<SuperPoly> basis;
    std::vector<SuperPoly> images;
    for (const Monomial& m : monomials_up_to(*chart, degree_bound)) {
        if (monomial_parity(*chart, m) != 0) continue;
        SuperPoly f(chart);
        f.add_term(m, Scalar::one());
        SuperPoly img = lichnerowicz(P, f);
        if (img.is_zero()) continue;
        basis.push_back(f);
        images.push_back(img);
    }
    auto sol = express_in_span(mu, images);
    if (!sol) return std::nullopt;
    SuperPoly F(chart);
    for (size_t j = 0; j < basis.size(); ++j)
        F = F + basis[j] * Scalar::from_gauss((*sol)[j]);
    return F;
}

}  // namespace superkoszul
