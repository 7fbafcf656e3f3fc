#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "superkoszul/corpus.hpp"
#include "superkoszul/linfty.hpp"

using namespace superkoszul;

namespace {

// Two even and two odd linear coordinates.
ChartPtr mixed_chart() {
    return ChartBuilder()
        .auxiliary("ev1", 0)
        .auxiliary("ev2", 0)
        .auxiliary("th1", 1)
        .auxiliary("th2", 1)
        .build();
}

// Purely odd coordinates: linear brackets on an ordinary (even) Lie algebra.
ChartPtr odd_chart() {
    return ChartBuilder()
        .auxiliary("th1", 1)
        .auxiliary("th2", 1)
        .auxiliary("th3", 1)
        .build();
}

SuperPoly gen(ChartPtr c, const std::string& name) {
    return SuperPoly::generator(c, name);
}

SuperPoly rat(ChartPtr c, Rational r) {
    return SuperPoly::constant(c, Scalar::from_rational(r));
}

VectorField field_from(ChartPtr chart,
                       const std::map<std::string, SuperPoly>& comps) {
    VectorField X = VectorField::zero(chart);
    for (const auto& [name, v] : comps)
        X.comp[static_cast<size_t>(chart->index_of(name))] = v;
    return X;
}

// Random homogeneous linear element.
SuperPoly random_linear(Rng& rng, ChartPtr chart, Parity p) {
    SuperPoly out(chart);
    for (int i = 0; i < chart->size(); ++i)
        if (chart->gen(i).parity == p)
            out = out + gen(chart, chart->gen(i).name) *
                            Scalar::from_rational(random_rational(rng));
    return out;
}

// Random odd polynomial vector field.
VectorField random_odd_field(Rng& rng, ChartPtr chart, int max_degree) {
    VectorField Q = VectorField::zero(chart);
    for (int i = 0; i < chart->size(); ++i)
        Q.comp[static_cast<size_t>(i)] = random_poly(
            rng, chart, max_degree, (1 + chart->gen(i).parity) % 2, 3);
    return Q;
}

std::vector<std::vector<SuperPoly>> basis_corpus(ChartPtr chart, int n_max) {
    std::vector<std::vector<SuperPoly>> corpus;
    std::vector<std::vector<SuperPoly>> frontier = {{}};
    for (int n = 1; n <= n_max; ++n) {
        std::vector<std::vector<SuperPoly>> next;
        for (const auto& t : frontier)
            for (int i = 0; i < chart->size(); ++i) {
                auto u = t;
                u.push_back(gen(chart, chart->gen(i).name));
                next.push_back(u);
            }
        corpus.insert(corpus.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return corpus;
}

}  // namespace

TEST_CASE("shuffle enumeration") {
    auto s11 = shuffles(1, 1);
    REQUIRE(s11.size() == 2);
    CHECK(s11[0] == std::vector<int>{0, 1});
    CHECK(s11[1] == std::vector<int>{1, 0});

    auto s20 = shuffles(2, 0);
    REQUIRE(s20.size() == 1);
    CHECK(s20[0] == std::vector<int>{0, 1});

    CHECK(shuffles(2, 2).size() == 6);
    CHECK(shuffles(3, 2).size() == 10);
    CHECK(shuffles(0, 3).size() == 1);

    // sigma(1) < ... < sigma(k) and sigma(k+1) < ... < sigma(k+l).
    for (const auto& perm : shuffles(3, 2)) {
        CHECK(std::is_sorted(perm.begin(), perm.begin() + 3));
        CHECK(std::is_sorted(perm.begin() + 3, perm.end()));
    }
}

TEST_CASE("permutation and Koszul signs") {
    CHECK(perm_sign({0, 1, 2}) == 1);
    CHECK(perm_sign({1, 0, 2}) == -1);
    CHECK(perm_sign({2, 0, 1}) == 1);

    CHECK(koszul_sign({0, 1}, {1, 1}) == 1);
    CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
    CHECK(koszul_sign({1, 0}, {0, 1}) == 1);
    CHECK(koszul_sign({1, 0}, {0, 0}) == 1);
    // Three odd elements reversed: three odd-odd inversions.
    CHECK(koszul_sign({2, 1, 0}, {1, 1, 1}) == -1);
}

TEST_CASE("brackets from a homological field: goldens") {
    ChartPtr c = mixed_chart();
    SuperPoly u = gen(c, "ev1"), th = gen(c, "th1");

    VectorField zero = VectorField::zero(c);
    CHECK(brackets_from_q(zero, {u}).is_zero());
    CHECK(brackets_from_q(zero, {u, th}).is_zero());

    // Q = th1 d/dev1: the unary bracket sends th1 to ev1 and kills ev1.
    VectorField Q = field_from(c, {{"ev1", th}});
    CHECK(Q.parity() == std::optional<Parity>(1));
    CHECK(brackets_from_q(Q, {th}) == u);
    CHECK(brackets_from_q(Q, {u}).is_zero());
    CHECK(brackets_from_q(Q, {}).is_zero());
}

TEST_CASE("field to family and back round-trips") {
    ChartPtr c = mixed_chart();
    Rng rng(20240812);
    for (int trial = 0; trial < 20; ++trial) {
        VectorField Q = random_odd_field(rng, c, 3);
        BracketFamily fam = family_from_q(Q, 3);
        VectorField back = q_field_from_family(fam, c, 3);
        // Components of degree <= 3 are fully recovered.
        auto low = [](const SuperPoly& p) {
            SuperPoly out(p.chart());
            for (const auto& [m, coef] : p.terms())
                if (monomial_degree(m) <= 3) out.add_term(m, coef);
            return out;
        };
        for (int i = 0; i < c->size(); ++i)
            CHECK(back.comp[static_cast<size_t>(i)] ==
                  low(Q.comp[static_cast<size_t>(i)]));
    }
}

TEST_CASE("flat field passes the symmetric higher Jacobi checks") {
    ChartPtr c = odd_chart();
    // Chevalley-Eilenberg field of the solvable algebra [e1,e2] = e1.
    VectorField Q = field_from(c, {{"th1", gen(c, "th1") * gen(c, "th2")}});
    CHECK(field_commutator(Q, Q).is_zero());

    BracketFamily fam = family_from_q(Q, 4);
    auto report = check_higher_jacobi(fam, basis_corpus(c, 3), 3);
    CHECK(report.checks == 3 + 9 + 27);
    CHECK(report.ok());

    Rng rng(20240812);
    std::vector<std::vector<SuperPoly>> corpus;
    for (int t = 0; t < 30; ++t) {
        std::vector<SuperPoly> tuple;
        for (size_t j = 0; j < 1 + t % 3; ++j)
            tuple.push_back(random_linear(rng, c, 1));
        corpus.push_back(tuple);
    }
    CHECK(check_higher_jacobi(fam, corpus, 3).ok());
}

TEST_CASE("non-flat field fails the higher Jacobi checks with a witness") {
    ChartPtr c = odd_chart();
    // Structure constants [e1,e2] ~ e1, [e1,e3] ~ e2 violate the Jacobi
    // identity, so this field is not homological.
    VectorField Q = field_from(c, {{"th1", gen(c, "th1") * gen(c, "th2")},
                                   {"th2", gen(c, "th1") * gen(c, "th3")}});
    CHECK(!field_commutator(Q, Q).is_zero());

    BracketFamily fam = family_from_q(Q, 4);
    auto report = check_higher_jacobi(fam, basis_corpus(c, 3), 3);
    CHECK(!report.ok());
    REQUIRE(!report.failures.empty());
    CHECK(!report.failures.front().residual.is_zero());
    CHECK(report.failures.front().args.size() ==
          static_cast<size_t>(report.failures.front().n));
}

TEST_CASE("antisymmetric brackets from a flat field") {
    ChartPtr c = odd_chart();
    VectorField Q = field_from(c, {{"th1", gen(c, "th1") * gen(c, "th2")}});

    // On the parity-reversed space this is an ordinary Lie algebra; the
    // elements e_i are encoded by the odd coordinates th_i.
    SuperPoly e1 = gen(c, "th1"), e2 = gen(c, "th2");
    SuperPoly b12 = antisym_brackets_from_q(Q, {e1, e2});
    SuperPoly b21 = antisym_brackets_from_q(Q, {e2, e1});
    CHECK(b21 == -b12);
    CHECK((b12 == e1 || b12 == -e1));

    BracketFamily fam;
    fam.version = LVersion::Antisymmetric;
    fam.parity_shift = 1;
    for (int k = 0; k <= 4; ++k)
        fam.ops[k] = [Q](const std::vector<SuperPoly>& args) {
            return antisym_brackets_from_q(Q, args);
        };
    CHECK(check_higher_jacobi(fam, basis_corpus(c, 3), 3).ok());
}

TEST_CASE("derived brackets of a flat multivector pass the antisymmetric checks") {
    ChartPtr c = ChartBuilder()
                     .base("x", 0)
                     .base("y", 0)
                     .base("xi", 1)
                     .with_antifibers()
                     .build();
    Rng rng(20240812);
    auto antifiber_only = [](const Generator& g) {
        return g.role == Role::Antifiber;
    };
    auto base_only = [](const Generator& g) { return g.role == Role::Base; };
    for (int trial = 0; trial < 6; ++trial) {
        // Constant-coefficient multivectors have vanishing self-bracket.
        SuperPoly body = random_poly_in(rng, c, 3, antifiber_only, 0, 5);
        PStructure P = PStructure::make(body);
        REQUIRE(P.is_pinfty);

        BracketFamily fam;
        fam.version = LVersion::Antisymmetric;
        for (int k = 0; k <= 4; ++k)
            fam.ops[k] = [P](const std::vector<SuperPoly>& args) {
                return higher_derived_bracket_P(P, args);
            };
        std::vector<std::vector<SuperPoly>> corpus;
        for (int t = 0; t < 12; ++t) {
            std::vector<SuperPoly> tuple;
            for (size_t j = 0; j < 1 + t % 3; ++j)
                tuple.push_back(random_poly_in(rng, c, 2, base_only,
                                               static_cast<Parity>(t % 2), 3));
            corpus.push_back(tuple);
        }
        auto report = check_higher_jacobi(fam, corpus, 3);
        CHECK(report.checks == 12);
        CHECK(report.ok());
    }
}

TEST_CASE("derived brackets of a non-flat multivector fail the checks") {
    ChartPtr c = ChartBuilder()
                     .base("x", 0)
                     .base("y", 0)
                     .base("xi", 1)
                     .with_antifibers()
                     .build();
    SuperPoly body = gen(c, "x") * gen(c, "xs") * gen(c, "ys") +
                     gen(c, "xis") * gen(c, "xis") * gen(c, "x");
    PStructure P = PStructure::make(body);
    REQUIRE(!P.is_pinfty);

    BracketFamily fam;
    fam.version = LVersion::Antisymmetric;
    for (int k = 0; k <= 4; ++k)
        fam.ops[k] = [P](const std::vector<SuperPoly>& args) {
            return higher_derived_bracket_P(P, args);
        };
    std::vector<std::vector<SuperPoly>> corpus;
    for (const auto& a : {"x", "y", "xi"})
        for (const auto& b : {"x", "y", "xi"})
            for (const auto& d : {"x", "y", "xi"})
                corpus.push_back({gen(c, a), gen(c, b), gen(c, d)});
    auto report = check_higher_jacobi(fam, corpus, 3);
    CHECK(!report.ok());
}

TEST_CASE("morphism relations: identity and linear conjugation") {
    ChartPtr c = mixed_chart();
    // Flat field with a genuinely binary part.
    VectorField Q = field_from(
        c, {{"th1", gen(c, "ev1")}, {"th2", gen(c, "ev1") * gen(c, "ev2")}});
    CHECK(field_commutator(Q, Q).is_zero());
    BracketFamily fam = family_from_q(Q, 4);

    Rng rng(20240812);
    std::vector<std::vector<SuperPoly>> corpus;
    for (int t = 0; t < 24; ++t) {
        std::vector<SuperPoly> tuple;
        for (size_t j = 0; j < 1 + t % 3; ++j)
            tuple.push_back(random_linear(rng, c, 0));
        corpus.push_back(tuple);
    }

    auto id1 = [](const std::vector<SuperPoly>& args) { return args[0]; };
    auto zero2 = [c](const std::vector<SuperPoly>&) { return SuperPoly::zero(c); };

    MorphismData ident{{{1, id1}, {2, zero2}, {3, zero2}}, fam, fam};
    auto report = check_linfty_morphism(ident, corpus, 3);
    CHECK(report.checks == 24);
    CHECK(report.ok());

    // Invertible parity-preserving change of basis A, target brackets
    // conjugated; phi_1 = A with zero higher Taylor data is a morphism.
    std::map<int, SuperPoly> A = {
        {c->index_of("ev2"), gen(c, "ev1") + gen(c, "ev2")},
        {c->index_of("th2"), gen(c, "th2") * Scalar::from_rational(Rational(2))}};
    std::map<int, SuperPoly> Ainv = {
        {c->index_of("ev2"), gen(c, "ev2") - gen(c, "ev1")},
        {c->index_of("th2"), gen(c, "th2") * Scalar::from_rational(Rational(1, 2))}};

    BracketFamily conj;
    conj.version = LVersion::Symmetric;
    for (int k = 0; k <= 4; ++k)
        conj.ops[k] = [&fam, &A, &Ainv, k](const std::vector<SuperPoly>& args) {
            std::vector<SuperPoly> pulled;
            for (const auto& a : args) pulled.push_back(substitute(a, Ainv));
            return substitute(fam.apply(k, pulled), A);
        };
    auto phi1 = [&A](const std::vector<SuperPoly>& args) {
        return substitute(args[0], A);
    };
    MorphismData md{{{1, phi1}, {2, zero2}, {3, zero2}}, fam, conj};
    CHECK(check_linfty_morphism(md, corpus, 3).ok());

    // A perturbed quadratic Taylor component breaks the n = 2 relation.
    int iev1 = c->index_of("ev1");
    auto phi2bad = [c, iev1](const std::vector<SuperPoly>& args) {
        Scalar c1 = args[0].coefficient({{iev1, 1}});
        Scalar c2 = args[1].coefficient({{iev1, 1}});
        return gen(c, "ev1") * (c1 * c2);
    };
    MorphismData bad{{{1, phi1}, {2, phi2bad}, {3, zero2}}, fam, conj};
    auto bad_report = check_linfty_morphism(bad, corpus, 3);
    CHECK(!bad_report.ok());
    bool saw_n2 = false;
    for (const auto& f : bad_report.failures) saw_n2 |= (f.n == 2);
    CHECK(saw_n2);
}

TEST_CASE("polarization of fiberwise maps") {
    ChartPtr c = mixed_chart();
    int iev1 = c->index_of("ev1"), iev2 = c->index_of("ev2");
    size_t dim = static_cast<size_t>(c->size());

    auto vec = [&](Rational a, Rational b) {
        std::vector<Rational> v(dim, Rational(0));
        v[static_cast<size_t>(iev1)] = a;
        v[static_cast<size_t>(iev2)] = b;
        return v;
    };

    // Linear map: first polarization is the map itself, higher ones vanish.
    std::vector<SuperPoly> lin = {gen(c, "ev1") + gen(c, "ev2") * rat(c, 3)};
    auto p1 = polarize_eval(lin, 1, {vec(2, 5)});
    CHECK(p1[0] == rat(c, Rational(2) + Rational(15)));
    CHECK(polarize_eval(lin, 2, {vec(2, 5), vec(1, 1)})[0].is_zero());

    // Quadratic f(u) = u^1 u^2: polarize(f,2)(u,v) = u^1 v^2 + v^1 u^2.
    std::vector<SuperPoly> quad = {gen(c, "ev1") * gen(c, "ev2")};
    auto p2 = polarize_eval(quad, 2, {vec(2, 3), vec(5, 7)});
    CHECK(p2[0] == rat(c, Rational(2 * 7 + 5 * 3)));
    // Diagonal is 2! times the Taylor coefficient.
    auto diag = polarize_eval(quad, 2, {vec(2, 3), vec(2, 3)});
    CHECK(diag[0] == rat(c, Rational(2 * 2 * 3)));

    // Nonzero component at an odd generator is rejected.
    std::vector<Rational> badpoint(dim, Rational(0));
    badpoint[static_cast<size_t>(c->index_of("th1"))] = 1;
    CHECK_THROWS_AS(polarize_eval(quad, 1, {badpoint}), Error);
}
