#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "superkoszul/corpus.hpp"
#include "superkoszul/thick.hpp"

using namespace superkoszul;

namespace {

DualPair even_pair() { return DualPair::make({{"x", 0}, {"y", 0}}); }

SuperPoly gen(ChartPtr c, const std::string& name) {
    return SuperPoly::generator(c, name);
}

SuperPoly base_part(const GenFunction& gf) {
    ChartPtr j = gf.S.chart();
    SuperPoly out(j);
    for (int x : j->indices(Role::Base, 0))
        out = out + SuperPoly::generator(j, x) *
                        SuperPoly::generator(
                            j, j->find(Role::BaseMomentum, j->gen(x).base_index));
    return out;
}

/// Pairing on the Pi T*M side, <h(x,x*), k(x,dx)>: the graded-symmetric
/// flip (-1)^{h~k~} <k, h> of the Pi TM pairing (convention pinned by the
/// adjoint law below).
SuperPoly pair_dual_side(const SuperPoly& h, const SuperPoly& k,
                         const DualPair& pr) {
    SuperPoly out = fiber_pairing(k, h, pr);
    if ((*h.parity() * *k.parity()) % 2) out = -out;
    return out;
}

}  // namespace

TEST_CASE("thick pullback: substitution morphisms and constant shift") {
    ChartPtr src = ChartBuilder().base("a", 0).base("b", 0).build();
    ChartPtr tgt = ChartBuilder().base("c", 0).base("d", 0).build();
    ChartPtr joint = ChartBuilder()
                         .base("a", 0)
                         .base("b", 0)
                         .auxiliary("c_q", 0)
                         .auxiliary("d_q", 0)
                         .build();
    SuperPoly a = gen(joint, "a"), b = gen(joint, "b");
    int cq = joint->index_of("c_q"), dq = joint->index_of("d_q");

    // S = phi^i(x) q_i pulls back to g(phi(x)).
    SuperPoly S = a * a * gen(joint, "c_q") + (a + b) * gen(joint, "d_q");
    GenFunction gf = GenFunction::make(S, src, tgt, {cq, dq});
    Rng rng(20240820);
    std::map<int, SuperPoly> phi = {
        {tgt->index_of("c"), gen(src, "a") * gen(src, "a")},
        {tgt->index_of("d"), gen(src, "a") + gen(src, "b")}};
    for (int t = 0; t < 6; ++t) {
        SuperPoly g = random_poly(rng, tgt, 3, 0);
        CHECK(thick_pullback(gf, g, 5) == substitute(g, phi, src));
    }

    // S = S^0(x) alone gives g(0) + S^0.
    SuperPoly S0 = a * a * a;
    GenFunction gf0 = GenFunction::make(S0, src, tgt, {cq, dq});
    SuperPoly g = gen(tgt, "c") * gen(tgt, "d") +
                  SuperPoly::constant(tgt, Scalar::from_rational(7));
    CHECK(thick_pullback(gf0, g, 3) ==
          gen(src, "a") * gen(src, "a") * gen(src, "a") +
              SuperPoly::constant(src, Scalar::from_rational(7)));
}

TEST_CASE("thick pullback: nonlinear S, truncated fixed point") {
    ChartPtr src = ChartBuilder().base("a", 0).build();
    ChartPtr tgt = ChartBuilder().base("c", 0).build();
    ChartPtr joint = ChartBuilder().base("a", 0).auxiliary("c_q", 0).build();
    SuperPoly a = gen(joint, "a"), q = gen(joint, "c_q");
    SuperPoly S = a * q + q * q * Scalar::from_rational(Rational(1) / 2);
    GenFunction gf = GenFunction::make(S, src, tgt, {joint->index_of("c_q")});
    SuperPoly g = gen(tgt, "c") * gen(tgt, "c");
    // Hand iteration at t-order 2: q = 2ta + 4t^2 a, y = a + 2ta + 4t^2 a,
    // and g(y) + S - yq folds to (1 + 4 + 10) a^2.
    CHECK(thick_pullback(gf, g, 2) ==
          gen(src, "a") * gen(src, "a") * Scalar::from_rational(15));
}

TEST_CASE("anchor generating function and classical anchor pullback") {
    DualPair pr = even_pair();
    PStructure P = PStructure::make(gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    REQUIRE(P.is_pinfty);

    GenFunction gf = anchor_genfun(P, pr);
    ChartPtr j = gf.S.chart();
    // S = x p_x + y p_y - ys dx_p + xs dy_p (signs (-1)^{a~+1} on even base).
    CHECK(gf.S == base_part(gf) - gen(j, "ys") * gen(j, "dx_p") +
                      gen(j, "xs") * gen(j, "dy_p"));

    // Index raising on the fibers, frozen: a: dx -> -ys, dy -> xs.
    CHECK(classical_anchor_pullback(P, gen(pr.E, "dx"), pr) == -gen(pr.Edual, "ys"));
    CHECK(classical_anchor_pullback(P, gen(pr.E, "dy"), pr) == gen(pr.Edual, "xs"));

    // Base functions are fixed, and the thick pullback by S agrees with the
    // substitution pullback.
    Rng rng(20240821);
    PStructure Plie =
        PStructure::make(gen(pr.Edual, "x") * gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    REQUIRE(Plie.is_pinfty);
    for (const PStructure* p : {&P, &Plie}) {
        SuperPoly fx = random_poly_in(
            rng, pr.E, 3, [](const Generator& g) { return g.role == Role::Base; });
        CHECK(classical_anchor_pullback(*p, fx, pr) == substitute(fx, {}, pr.Edual));
        GenFunction an = anchor_genfun(*p, pr);
        for (int t = 0; t < 5; ++t) {
            SuperPoly w = random_poly(rng, pr.E, 3, 0);
            CHECK(thick_pullback(an, w, 4) == classical_anchor_pullback(*p, w, pr));
        }
    }

    // a* is a chain map up to the frozen sign, d_P o a* = -a* o d, exactly
    // when P is flat.
    for (const PStructure* p : {&P, &Plie}) {
        for (int t = 0; t < 8; ++t) {
            SuperPoly w = random_poly(rng, pr.E, 3, t % 2);
            CHECK(lichnerowicz(*p, classical_anchor_pullback(*p, w, pr)) ==
                  -classical_anchor_pullback(*p, de_rham(w), pr));
        }
    }
    PStructure Pbad =
        PStructure::make(gen(pr.Edual, "xs") * gen(pr.Edual, "ys") + gen(pr.Edual, "x"));
    REQUIRE(!Pbad.is_pinfty);
    bool broken = false;
    for (int t = 0; t < 8; ++t) {
        SuperPoly w = random_poly(rng, pr.E, 3, t % 2);
        broken = broken ||
                 lichnerowicz(Pbad, classical_anchor_pullback(Pbad, w, pr)) !=
                     -classical_anchor_pullback(Pbad, de_rham(w), pr);
    }
    CHECK(broken);
}

TEST_CASE("dual generating function") {
    DualPair pr = even_pair();
    PStructure P = PStructure::make(gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    GenFunction gf = dual_genfun(P, pr);
    ChartPtr j = gf.S.chart();
    // S* = x p_x + y p_y + dy_p xs - dx_p ys.
    CHECK(gf.S == base_part(gf) + gen(j, "dy_p") * gen(j, "xs") -
                      gen(j, "dx_p") * gen(j, "ys"));

    // Frozen relation: the fiber part of S* is minus the x* <-> pi swap of
    // the fiber part of the anchor's S.
    GenFunction an = anchor_genfun(P, pr);
    std::map<int, SuperPoly> swap;
    for (int xs : j->indices(Role::Antifiber, 0)) {
        int pi = j->find(Role::TangentFiberMomentum, j->gen(xs).base_index);
        swap.emplace(xs, SuperPoly::generator(j, pi));
        swap.emplace(pi, SuperPoly::generator(j, xs));
    }
    CHECK(gf.S - base_part(gf) == -substitute(an.S - base_part(an), swap));

    // For a bivector the dual morphism is the anchor of -P.
    PStructure Pneg = PStructure::make(-P.P);
    Rng rng(20240822);
    for (int t = 0; t < 6; ++t) {
        SuperPoly g = random_poly(rng, pr.E, 3, 0);
        CHECK(thick_pullback(gf, g, 4) == classical_anchor_pullback(Pneg, g, pr));
    }
}

TEST_CASE("Phi-relatedness of the Hamiltonians") {
    DualPair pr = even_pair();
    SuperPoly HSch = schouten_hamiltonian(pr.TEdual);
    SuperPoly Hd = de_rham_hamiltonian(pr.TE);

    PStructure P = PStructure::make(gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    PStructure Plie =
        PStructure::make(gen(pr.Edual, "x") * gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    for (const PStructure* p : {&P, &Plie}) {
        // The anchor relates H_{d_P} = -{H_Sch, P} with H_d (the minus
        // matching H_P = -{H_d, P(x,pi)} on the other side) ...
        SuperPoly HdP = -canonical_poisson(HSch, substitute(p->P, {}, pr.TEdual));
        CHECK(check_phi_related(HdP, Hd, anchor_genfun(*p, pr)).ok());
        // ... and the dual relates H_Sch with the higher Koszul H_P.
        CHECK(check_phi_related(HSch, koszul_hamiltonian(*p, pr.TE),
                                dual_genfun(*p, pr))
                  .ok());
    }

    // Both fail for a non-flat P.
    PStructure Pbad =
        PStructure::make(gen(pr.Edual, "xs") * gen(pr.Edual, "ys") + gen(pr.Edual, "x"));
    SuperPoly HdBad = -canonical_poisson(HSch, substitute(Pbad.P, {}, pr.TEdual));
    CHECK(!check_phi_related(HdBad, Hd, anchor_genfun(Pbad, pr)).ok());
    CHECK(!check_phi_related(HSch, koszul_hamiltonian(Pbad, pr.TE),
                             dual_genfun(Pbad, pr))
               .ok());

    // Quartic P on a four-dimensional base: S* is cubic in the momenta, so
    // this exercises the genuinely thick (nonlinear) case.
    DualPair p4 = DualPair::make({{"x", 0}, {"y", 0}, {"z", 0}, {"w", 0}});
    SuperPoly P4 = gen(p4.Edual, "xs") * gen(p4.Edual, "ys") +
                   gen(p4.Edual, "z") * gen(p4.Edual, "xs") * gen(p4.Edual, "ys") *
                       gen(p4.Edual, "zs") * gen(p4.Edual, "ws");
    PStructure Pq = PStructure::make(P4);
    REQUIRE(Pq.is_pinfty);
    GenFunction gq = dual_genfun(Pq, p4);
    CHECK(gq.S.degree_in([](const Generator& g) {
        return g.role == Role::TangentFiberMomentum;
    }) == 3);
    CHECK(check_phi_related(schouten_hamiltonian(p4.TEdual),
                            koszul_hamiltonian(Pq, p4.TE), gq)
              .ok());
    CHECK(check_phi_related(-canonical_poisson(schouten_hamiltonian(p4.TEdual),
                                               substitute(Pq.P, {}, p4.TEdual)),
                            de_rham_hamiltonian(p4.TE), anchor_genfun(Pq, p4))
              .ok());
}

TEST_CASE("quantum pullback: Fourier inversion pins the Dbar normalization") {
    DualPair pr = even_pair();
    // Hand-built pairing kernel fun(Pi TM) -> fun(Pi TM): phase dx^a y*_a,
    // integration over (dy, y*). Must reproduce the identity.
    ChartBuilder b;
    for (const Generator& g : pr.base->gens()) b.base(g.name, g.parity);
    ChartPtr j = b.with_antifibers(0)
                     .with_tangent_fibers(0)
                     .with_tangent_fibers(1)
                     .with_antifibers(1)
                     .build();
    KernelOperator K;
    K.pair = pr;
    K.joint = j;
    K.phase = SuperPoly::zero(j);
    K.pair_term = SuperPoly::zero(j);
    for (int ys : j->indices(Role::Antifiber, 1)) {
        int bi = j->gen(ys).base_index;
        K.phase = K.phase +
                  SuperPoly::generator(j, j->find(Role::TangentFiber, bi, 0)) *
                      SuperPoly::generator(j, ys);
        K.pair_term = K.pair_term +
                      SuperPoly::generator(j, j->find(Role::TangentFiber, bi, 1)) *
                          SuperPoly::generator(j, ys);
        K.plain_slots.push_back(j->find(Role::TangentFiber, bi, 1));
        K.dbar_slots.push_back(ys);
    }
    K.domain = pr.E;
    K.codomain = pr.E;
    for (const Generator& g : pr.E->gens()) {
        int src = pr.E->index_of(g.name);
        if (g.role == Role::Base) {
            int t = j->find(Role::Base, g.base_index, 0);
            K.domain_to_joint.emplace(src, t);
            K.joint_to_codomain.emplace(t, src);
        } else {
            K.domain_to_joint.emplace(src, j->find(Role::TangentFiber, g.base_index, 1));
            K.joint_to_codomain.emplace(j->find(Role::TangentFiber, g.base_index, 0),
                                        src);
        }
    }
    Rng rng(20240823);
    for (int t = 0; t < 8; ++t) {
        SuperPoly f = random_poly(rng, pr.E, 3, t % 2);
        CHECK(quantum_pullback(K, f) == f);
    }
}

TEST_CASE("anchor kernel represents the classical pullback") {
    DualPair pr = even_pair();
    Rng rng(20240824);
    PStructure P = PStructure::make(gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    PStructure Plie =
        PStructure::make(gen(pr.Edual, "x") * gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    PStructure Pzero = PStructure::make(SuperPoly::zero(pr.Edual));
    for (const PStructure* p : {&P, &Plie, &Pzero}) {
        KernelOperator K = anchor_kernel(*p, pr);
        for (int t = 0; t < 6; ++t) {
            SuperPoly f = random_poly(rng, pr.E, 3, t % 2);
            CHECK(quantum_pullback(K, f) == classical_anchor_pullback(*p, f, pr));
        }
    }

    // The kernel phase is the fiber part of the anchor's generating function
    // under y*_a -> pi_a.
    KernelOperator K = anchor_kernel(Plie, pr);
    GenFunction gf = anchor_genfun(Plie, pr);
    ChartPtr gj = gf.S.chart();
    std::map<int, SuperPoly> to_pi;
    for (int ys : K.joint->indices(Role::Antifiber, 1))
        to_pi.emplace(ys, SuperPoly::generator(
                              gj, gj->find(Role::TangentFiberMomentum,
                                           K.joint->gen(ys).base_index)));
    CHECK(substitute(K.phase, to_pi, gj) == gf.S - base_part(gf));
}

TEST_CASE("quantum dual kernel is the pairing adjoint of a*") {
    DualPair pr = even_pair();
    Rng rng(20240825);
    PStructure P = PStructure::make(gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    PStructure Plie =
        PStructure::make(gen(pr.Edual, "x") * gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    for (const PStructure* p : {&P, &Plie}) {
        KernelOperator D = quantum_dual(anchor_kernel(*p, pr));
        // <a* f, k> on the Pi T*M side = <f, (a*)^star k> on the Pi TM side;
        // a* is even and involves no base derivatives, so the identity is
        // exact, with no rho-divergence slack.
        for (int t = 0; t < 8; ++t) {
            SuperPoly f = random_poly(rng, pr.E, 2, t % 2);
            SuperPoly k = random_poly(rng, pr.E, 2, (t / 2) % 2);
            CHECK(pair_dual_side(classical_anchor_pullback(*p, f, pr), k, pr) ==
                  fiber_pairing(f, quantum_pullback(D, k), pr));
        }
    }

    // Double dual restores the original kernel.
    KernelOperator K = anchor_kernel(Plie, pr);
    KernelOperator KK = quantum_dual(quantum_dual(K));
    CHECK(KK.phase == K.phase);
    CHECK(KK.pair_term == K.pair_term);
    CHECK(KK.plain_slots == K.plain_slots);
    CHECK(KK.dbar_slots == K.dbar_slots);
    CHECK(KK.domain_to_joint == K.domain_to_joint);
    CHECK(KK.joint_to_codomain == K.joint_to_codomain);
    CHECK(!KK.dualized);
}

TEST_CASE("quantum intertwining, invariant volume (case 1)") {
    DualPair pr = even_pair();
    Rng rng(20240826);
    VolumeData vol = VolumeData::trivial(pr.base);
    std::vector<SuperPoly> corpus;
    for (int t = 0; t < 6; ++t)
        corpus.push_back(random_poly(rng, pr.E, 2, t % 2, 3));

    PStructure P = PStructure::make(gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    IntertwineReport rep = check_intertwining(P, pr, vol, std::nullopt, corpus);
    CHECK(rep.ok());
    CHECK(rep.checks == 6);

    PStructure Pzero = PStructure::make(SuperPoly::zero(pr.Edual));
    CHECK(check_intertwining(Pzero, pr, vol, std::nullopt, corpus).ok());

    // delta_rho(P) != 0 without a potential: reported, not checked.
    VolumeData ex = VolumeData::make(gen(pr.base, "x"));
    PStructure Plie =
        PStructure::make(gen(pr.Edual, "x") * gen(pr.Edual, "xs") * gen(pr.Edual, "ys"));
    IntertwineReport bad = check_intertwining(Plie, pr, ex, std::nullopt, corpus);
    CHECK(!bad.ok());
    CHECK(!bad.precondition_ok);
    CHECK(bad.checks == 0);
    CHECK(bad.precondition_residual == divergence(Plie.P, ex));
}

TEST_CASE("quantum intertwining, gauge-corrected (case 2)") {
    DualPair p4 = DualPair::make({{"x", 0}, {"y", 0}, {"z", 0}, {"w", 0}});
    SuperPoly xs = gen(p4.Edual, "xs"), ys = gen(p4.Edual, "ys"),
              zs = gen(p4.Edual, "zs"), ws = gen(p4.Edual, "ws");
    PStructure P = PStructure::make(xs * ys + gen(p4.Edual, "z") * xs * ys * zs * ws);
    REQUIRE(P.is_pinfty);
    VolumeData vol = VolumeData::trivial(p4.base);
    SuperPoly mu = modular_cocycle(P, vol);
    CHECK(mu == xs * ys * ws);

    // A nilpotent even potential: d_P(+-x xs ws) = mu.
    SuperPoly F0 = gen(p4.Edual, "x") * xs * ws;
    SuperPoly r = lichnerowicz(P, F0);
    REQUIRE((r == mu || -r == mu));
    SuperPoly F = r == mu ? F0 : -F0;

    Rng rng(20240827);
    std::vector<SuperPoly> corpus;
    for (int t = 0; t < 4; ++t)
        corpus.push_back(random_poly(rng, p4.E, 2, t % 2, 3));
    IntertwineReport rep = check_intertwining(P, p4, vol, F, corpus);
    CHECK(rep.precondition_ok);
    CHECK(rep.ok());

    // Wrong potential: precondition residual reported, nothing checked.
    IntertwineReport bad = check_intertwining(
        P, p4, vol, F + gen(p4.Edual, "x") * gen(p4.Edual, "x"), corpus);
    CHECK(!bad.precondition_ok);
    CHECK(bad.checks == 0);
}
