#include "superkoszul/thick.hpp"

namespace superkoszul {

namespace {

/// Drops every scalar term of t-degree above `order`.
SuperPoly truncate_t(const SuperPoly& f, int order) {
    SuperPoly out(f.chart());
    for (const auto& [m, s] : f.terms()) {
        Scalar ns;
        for (const auto& [key, v] : s.terms())
            if (key.second <= order)
                ns = ns + Scalar::from_gauss(v, key.first, key.second);
        if (!ns.is_zero()) out.add_term(m, ns);
    }
    return out;
}

ChartPtr genfun_joint(const DualPair& pair) {
    ChartBuilder b;
    for (const Generator& g : pair.base->gens()) b.base(g.name, g.parity);
    return b.with_antifibers().with_base_momenta().with_tangent_momenta().build();
}

/// (-1)^{a~+1} dP/dx*_a for every base coordinate, on P's own chart,
/// indexed by base_index.
std::vector<SuperPoly> anchor_components(const SuperPoly& P) {
    ChartPtr c = P.chart();
    std::vector<SuperPoly> out(static_cast<size_t>(c->base_count()),
                               SuperPoly::zero(c));
    for (int xs : c->indices(Role::Antifiber, 0)) {
        int bi = c->gen(xs).base_index;
        int x = c->find(Role::Base, bi, 0);
        SuperPoly v = left_derivative(P, xs);
        if (c->gen(x).parity % 2 == 0) v = -v;
        out[static_cast<size_t>(bi)] = v;
    }
    return out;
}

std::vector<int> anchor_q_index(ChartPtr target, ChartPtr joint) {
    std::vector<int> q;
    for (const Generator& g : target->gens()) {
        Role mom = g.role == Role::Base ? Role::BaseMomentum
                                        : Role::TangentFiberMomentum;
        if (g.role != Role::Base && g.role != Role::TangentFiber)
            throw Error("anchor_q_index: target must be the Pi TM chart");
        int j = joint->find(mom, g.base_index, 0);
        if (j < 0) throw Error("anchor_q_index: joint chart lacks a momentum");
        q.push_back(j);
    }
    return q;
}

void require_even_base(const Chart& c, const char* who) {
    for (int x : c.indices(Role::Base, 0))
        if (c.gen(x).parity % 2)
            throw Error(std::string(who) + ": base must be purely even");
}

/// Fills the orientation-dependent fields of a kernel operator.
void configure_kernel(KernelOperator& K) {
    ChartPtr j = K.joint;
    K.pair_term = SuperPoly::zero(j);
    K.plain_slots.clear();
    K.dbar_slots.clear();
    K.domain_to_joint.clear();
    K.joint_to_codomain.clear();
    K.domain = K.pair.E;
    K.codomain = K.pair.Edual;
    // Forward: integrate over the second-copy fibers (dy, y*), output in x*.
    // Dual: same phase, integrate over (dx, x*), output in y*.
    int fiber_copy = K.dualized ? 0 : 1;
    for (int dx : j->indices(Role::TangentFiber, fiber_copy)) {
        int bi = j->gen(dx).base_index;
        int xs = j->find(Role::Antifiber, bi, fiber_copy);
        K.pair_term = K.pair_term + SuperPoly::generator(j, dx) *
                                        SuperPoly::generator(j, xs);
        K.plain_slots.push_back(dx);
        K.dbar_slots.push_back(xs);
    }
    for (const Generator& g : K.domain->gens()) {
        int t = g.role == Role::Base ? j->find(Role::Base, g.base_index, 0)
                                     : j->find(Role::TangentFiber, g.base_index,
                                               fiber_copy);
        K.domain_to_joint.emplace(K.domain->index_of(g.name), t);
    }
    int out_copy = K.dualized ? 1 : 0;
    for (const Generator& g : K.codomain->gens()) {
        int t = g.role == Role::Base ? j->find(Role::Base, g.base_index, 0)
                                     : j->find(Role::Antifiber, g.base_index,
                                               out_copy);
        K.joint_to_codomain.emplace(t, K.codomain->index_of(g.name));
    }
}

}  // namespace

GenFunction GenFunction::make(SuperPoly S, ChartPtr source, ChartPtr target,
                              std::vector<int> q_index) {
    if (!S.is_even() && !S.is_zero())
        throw Error("GenFunction: S must be even");
    ChartPtr j = S.chart();
    for (const Generator& g : source->gens()) {
        auto i = j->try_index_of(g.name);
        if (!i || j->gen(*i).parity != g.parity)
            throw Error("GenFunction: joint chart lacks source coordinate '" +
                        g.name + "'");
    }
    if (static_cast<int>(q_index.size()) != target->size())
        throw Error("GenFunction: one momentum per target coordinate required");
    for (int i = 0; i < target->size(); ++i)
        if (j->gen(q_index[static_cast<size_t>(i)]).parity !=
            target->gen(i).parity)
            throw Error("GenFunction: momentum parity mismatch at slot " +
                        std::to_string(i));
    return {std::move(S), std::move(source), std::move(target),
            std::move(q_index)};
}

SuperPoly thick_pullback(const GenFunction& gf, const SuperPoly& g, int order) {
    if (!g.chart()->same_as(*gf.target))
        throw Error("thick_pullback: g must live on the target chart");
    if (!g.is_even() && !g.is_zero())
        throw Error("thick_pullback: g must be even");
    ChartPtr j = gf.S.chart();
    int nt = gf.target->size();

    // (-1)^{i~} dS/dq_i, still a function of the momenta.
    std::vector<SuperPoly> dSdq;
    std::vector<SuperPoly> dgdy;
    for (int i = 0; i < nt; ++i) {
        SuperPoly d = left_derivative(gf.S, gf.q_index[static_cast<size_t>(i)]);
        if (gf.target->gen(i).parity % 2) d = -d;
        dSdq.push_back(d);
        dgdy.push_back(left_derivative(g, i));
    }

    std::vector<SuperPoly> q(static_cast<size_t>(nt), SuperPoly::zero(j));
    std::vector<SuperPoly> y(static_cast<size_t>(nt), SuperPoly::zero(j));
    bool converged = false;
    for (int pass = 0; pass <= order + 1 && !converged; ++pass) {
        std::map<int, SuperPoly> qsub;
        for (int i = 0; i < nt; ++i)
            qsub.emplace(gf.q_index[static_cast<size_t>(i)],
                         q[static_cast<size_t>(i)]);
        for (int i = 0; i < nt; ++i)
            y[static_cast<size_t>(i)] =
                truncate_t(substitute(dSdq[static_cast<size_t>(i)], qsub), order);
        std::map<int, SuperPoly> ysub;
        for (int i = 0; i < nt; ++i) ysub.emplace(i, y[static_cast<size_t>(i)]);
        std::vector<SuperPoly> qn;
        for (int i = 0; i < nt; ++i)
            qn.push_back(truncate_t(
                substitute(dgdy[static_cast<size_t>(i)], ysub, j) *
                    Scalar::t_marker(),
                order));
        converged = qn == q;
        q = std::move(qn);
    }
    if (!converged)
        throw Error("thick_pullback: no fixed point within the truncation budget");

    std::map<int, SuperPoly> qsub;
    std::map<int, SuperPoly> ysub;
    for (int i = 0; i < nt; ++i) {
        qsub.emplace(gf.q_index[static_cast<size_t>(i)],
                     q[static_cast<size_t>(i)]);
        ysub.emplace(i, y[static_cast<size_t>(i)]);
    }
    SuperPoly res = substitute(g, ysub, j) + substitute(gf.S, qsub);
    for (int i = 0; i < nt; ++i)
        res = res - y[static_cast<size_t>(i)] * q[static_cast<size_t>(i)];
    return substitute(truncate_t(res, order).fold_t(), {}, gf.source);
}

PhiReport check_phi_related(const SuperPoly& H1, const SuperPoly& H2,
                            const GenFunction& gf) {
    ChartPtr j = gf.S.chart();
    std::map<int, SuperPoly> sub1;
    for (const auto& [u, pu] : momentum_pairs(*H1.chart())) {
        auto ju = j->try_index_of(H1.chart()->gen(u).name);
        if (!ju)
            throw Error("check_phi_related: source coordinate '" +
                        H1.chart()->gen(u).name + "' missing from the joint chart");
        sub1.emplace(pu, left_derivative(gf.S, *ju));
    }
    SuperPoly lhs = substitute(H1, sub1, j);

    std::map<int, SuperPoly> sub2;
    for (int i = 0; i < gf.target->size(); ++i) {
        SuperPoly v = left_derivative(gf.S, gf.q_index[static_cast<size_t>(i)]);
        if (gf.target->gen(i).parity % 2) v = -v;
        sub2.emplace(H2.chart()->index_of(gf.target->gen(i).name), v);
    }
    SuperPoly rhs = substitute(H2, sub2, j);
    return {lhs - rhs};
}

GenFunction anchor_genfun(const PStructure& P, const DualPair& pair) {
    if (!P.P.chart()->same_as(*pair.Edual))
        throw Error("anchor_genfun: P must live on the Pi T*M chart");
    ChartPtr j = genfun_joint(pair);
    SuperPoly Pj = substitute(P.P, {}, j);
    SuperPoly S(j);
    for (int x : j->indices(Role::Base, 0)) {
        int p = j->find(Role::BaseMomentum, j->gen(x).base_index, 0);
        S = S + SuperPoly::generator(j, x) * SuperPoly::generator(j, p);
    }
    std::vector<SuperPoly> a = anchor_components(Pj);
    for (int pi : j->indices(Role::TangentFiberMomentum, 0))
        S = S + a[static_cast<size_t>(j->gen(pi).base_index)] *
                    SuperPoly::generator(j, pi);
    return GenFunction::make(std::move(S), pair.Edual, pair.E,
                             anchor_q_index(pair.E, j));
}

GenFunction dual_genfun(const PStructure& P, const DualPair& pair) {
    if (!P.P.chart()->same_as(*pair.Edual))
        throw Error("dual_genfun: P must live on the Pi T*M chart");
    ChartPtr j = genfun_joint(pair);
    SuperPoly Pj = substitute(P.P, {}, j);
    SuperPoly S(j);
    for (int x : j->indices(Role::Base, 0)) {
        int p = j->find(Role::BaseMomentum, j->gen(x).base_index, 0);
        S = S + SuperPoly::generator(j, x) * SuperPoly::generator(j, p);
    }
    // x*_b inside dP/dx*_a becomes the momentum pi_b; the remaining x*_a is
    // the source antifiber coordinate, and the sign flips relative to the
    // anchor.
    std::map<int, SuperPoly> to_pi;
    for (int xs : j->indices(Role::Antifiber, 0))
        to_pi.emplace(xs, SuperPoly::generator(
                              j, j->find(Role::TangentFiberMomentum,
                                         j->gen(xs).base_index, 0)));
    std::vector<SuperPoly> a = anchor_components(Pj);
    for (int xs : j->indices(Role::Antifiber, 0))
        S = S - substitute(a[static_cast<size_t>(j->gen(xs).base_index)], to_pi) *
                    SuperPoly::generator(j, xs);
    return GenFunction::make(std::move(S), pair.Edual, pair.E,
                             anchor_q_index(pair.E, j));
}

SuperPoly classical_anchor_pullback(const PStructure& P, const SuperPoly& omega,
                                    const DualPair& pair) {
    if (!P.P.chart()->same_as(*pair.Edual))
        throw Error("classical_anchor_pullback: P must live on the Pi T*M chart");
    if (!omega.chart()->same_as(*pair.E))
        throw Error("classical_anchor_pullback: omega must live on the Pi TM chart");
    std::vector<SuperPoly> a = anchor_components(P.P);
    std::map<int, SuperPoly> sub;
    for (int dx : pair.E->indices(Role::TangentFiber, 0))
        sub.emplace(dx, a[static_cast<size_t>(pair.E->gen(dx).base_index)]);
    return substitute(omega, sub, pair.Edual);
}

SuperPoly quantum_pullback(const KernelOperator& K, const SuperPoly& f) {
    if (!f.chart()->same_as(*K.domain))
        throw Error("quantum_pullback: argument chart mismatch");
    std::map<int, SuperPoly> in;
    for (const auto& [d, j] : K.domain_to_joint)
        in.emplace(d, SuperPoly::generator(K.joint, j));
    SuperPoly ft = substitute(f, in, K.joint);
    Scalar i_over_hbar = Scalar::imag_unit() * Scalar::hbar(-1);
    SuperPoly kernel = exp_nilpotent((K.phase - K.pair_term) * i_over_hbar);
    std::vector<int> slots = K.plain_slots;
    slots.insert(slots.end(), K.dbar_slots.begin(), K.dbar_slots.end());
    SuperPoly r = berezin_integral(kernel * ft, slots);
    // Dbar measure: (i hbar)^m (-1)^{m(m+1)/2} over m odd variables.
    Scalar norm = Scalar::one();
    int m = static_cast<int>(K.dbar_slots.size());
    for (int k = 0; k < m; ++k)
        norm = norm * (Scalar::imag_unit() * Scalar::hbar(1));
    if ((m * (m + 1) / 2) % 2) norm = -norm;
    std::map<int, SuperPoly> out;
    for (const auto& [j, c] : K.joint_to_codomain)
        out.emplace(j, SuperPoly::generator(K.codomain, c));
    return substitute(r * norm, out, K.codomain);
}

KernelOperator anchor_kernel(const PStructure& P, const DualPair& pair) {
    if (!P.P.chart()->same_as(*pair.Edual))
        throw Error("anchor_kernel: P must live on the Pi T*M chart");
    require_even_base(*pair.base, "anchor_kernel");
    KernelOperator K;
    K.pair = pair;
    ChartBuilder b;
    for (const Generator& g : pair.base->gens()) b.base(g.name, g.parity);
    K.joint = b.with_antifibers(0)
                  .with_tangent_fibers(0)
                  .with_tangent_fibers(1)
                  .with_antifibers(1)
                  .build();
    std::vector<SuperPoly> a = anchor_components(substitute(P.P, {}, K.joint));
    K.phase = SuperPoly::zero(K.joint);
    for (int ys : K.joint->indices(Role::Antifiber, 1))
        K.phase = K.phase + a[static_cast<size_t>(K.joint->gen(ys).base_index)] *
                                SuperPoly::generator(K.joint, ys);
    configure_kernel(K);
    return K;
}

KernelOperator quantum_dual(const KernelOperator& K) {
    KernelOperator D = K;
    D.dualized = !D.dualized;
    configure_kernel(D);
    return D;
}

IntertwineReport check_intertwining(const PStructure& P, const DualPair& pair,
                                    const VolumeData& vol,
                                    const std::optional<SuperPoly>& F,
                                    const std::vector<SuperPoly>& corpus) {
    if (!P.is_pinfty)
        throw Error("check_intertwining: P is not a P-infinity structure");
    SuperPoly mu = divergence(P.P, vol);
    IntertwineReport rep;
    if (F) {
        if (!F->is_even() && !F->is_zero())
            throw Error("check_intertwining: F must be even");
        rep.precondition_residual = mu - lichnerowicz(P, *F);
    } else {
        rep.precondition_residual = mu;
    }
    rep.precondition_ok = rep.precondition_residual.is_zero();
    if (!rep.precondition_ok) return rep;

    KernelOperator K = quantum_dual(anchor_kernel(P, pair));
    HbarOp Delta = build_Delta_P(P, pair.E);
    // I = (e^{-F} a*)^star = (a*)^star o (M_{e^{-F}})^star; exp_nilpotent
    // rejects an F with nonzero body.
    HbarOp corr = F ? quantum_mx(HbarOp::multiplication(exp_nilpotent(-*F)),
                                 pair, vol)
                    : HbarOp::identity(pair.E);
    // Frozen relation Delta_P = +hbar^2 [d, i(P)] flips the divergence side
    // to +hbar^2 delta_rho relative to the opposite sign convention.
    Scalar hbar2 = Scalar::hbar(2);
    for (const SuperPoly& g : corpus) {
        SuperPoly Ig = quantum_pullback(K, corr.apply(g));
        SuperPoly lhs = quantum_pullback(K, corr.apply(Delta.apply(g)));
        SuperPoly rhs = divergence(Ig, vol) * hbar2;
        ++rep.checks;
        if (lhs != rhs) ++rep.failures;
    }
    return rep;
}

}  // namespace superkoszul
