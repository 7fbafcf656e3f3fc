#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "superkoszul/corpus.hpp"
#include "superkoszul/parse.hpp"
#include "superkoszul/superpoly.hpp"

using namespace superkoszul;

namespace {

ChartPtr two_odd() {
    return ChartBuilder().base("th1", 1).base("th2", 1).build();
}

ChartPtr mixed_chart() {
    return ChartBuilder().base("x", 0).base("xi", 1).with_antifibers().build();
}

}  // namespace

TEST_CASE("scalar ring") {
    Scalar i = Scalar::imag_unit();
    CHECK(i * i == -Scalar::one());
    CHECK(Scalar::neg_i_hbar_pow(1) == -(i * Scalar::hbar()));
    CHECK(Scalar::neg_i_hbar_pow(2) == -Scalar::hbar(2));
    CHECK(Scalar::neg_i_hbar_pow(-1) * Scalar::neg_i_hbar_pow(1) == Scalar::one());
    CHECK(Scalar::neg_i_hbar_pow(4) == Scalar::hbar(4));

    Scalar s = Scalar::one() + Scalar::hbar(2) + Scalar::hbar(-1);
    CHECK_THROWS_AS(s.mod_hbar(), Error);
    CHECK((Scalar::one() + Scalar::hbar(2)).mod_hbar() == Scalar::one());
    CHECK(s.min_hbar_degree() == -1);
    CHECK(s.max_hbar_degree() == 2);
    CHECK((Scalar::t_marker(3) + Scalar::t_marker(1)).fold_t() ==
          Scalar::from_rational(2));
    CHECK(Scalar::from_rational(Rational(3, 2)).constant_value() ==
          GaussRat{Rational(3, 2), 0});
}

TEST_CASE("chart builder naming and parities") {
    auto c = ChartBuilder()
                 .base("x", 0)
                 .base("xi", 1)
                 .with_antifibers()
                 .with_tangent_fibers()
                 .with_base_momenta()
                 .with_antifiber_momenta()
                 .with_tangent_momenta()
                 .build();
    CHECK(c->size() == 12);
    CHECK(c->gen(c->index_of("xs")).parity == 1);
    CHECK(c->gen(c->index_of("xis")).parity == 0);
    CHECK(c->gen(c->index_of("dx")).parity == 1);
    CHECK(c->gen(c->index_of("x_p")).parity == 0);
    CHECK(c->gen(c->index_of("xi_p")).parity == 1);
    // pi^a is conjugate to x*_a, so it carries the antifiber parity a~+1.
    CHECK(c->gen(c->index_of("xs_p")).parity == 1);
    CHECK(c->gen(c->index_of("xis_p")).parity == 0);
    CHECK(c->gen(c->index_of("dxi_p")).parity == 0);
    CHECK(c->find(Role::Antifiber, 1) == c->index_of("xis"));
    CHECK(c->base_count() == 2);
}

TEST_CASE("odd generators anticommute and square to zero") {
    auto c = two_odd();
    auto t1 = SuperPoly::generator(c, "th1");
    auto t2 = SuperPoly::generator(c, "th2");
    CHECK(t1 * t1 == SuperPoly::zero(c));
    CHECK(t1 * t2 == -(t2 * t1));
    CHECK((t1 * t2) * (t1 * t2) == SuperPoly::zero(c));
}

TEST_CASE("left derivative goldens") {
    auto c = two_odd();
    auto t1 = SuperPoly::generator(c, "th1");
    auto t2 = SuperPoly::generator(c, "th2");
    auto f = t1 * t2;
    CHECK(left_derivative(f, "th1") == t2);
    CHECK(left_derivative(f, "th2") == -t1);

    auto m = mixed_chart();
    auto x = SuperPoly::generator(m, "x");
    auto cube = x * x * x;
    CHECK(left_derivative(cube, "x") ==
          x * x * Scalar::from_rational(3));
}

TEST_CASE("berezin integral convention") {
    auto c = two_odd();
    auto t1 = SuperPoly::generator(c, "th1");
    auto t2 = SuperPoly::generator(c, "th2");
    auto one = SuperPoly::constant(c, Scalar::one());
    // innermost-first: berezin(f, {a, b}) = \int Da \int Db f
    CHECK(berezin_integral(t2 * t1, {c->index_of("th1"), c->index_of("th2")}) ==
          one);
    CHECK(berezin_integral(t1 * t2, {c->index_of("th1"), c->index_of("th2")}) ==
          -one);
    CHECK(berezin_integral(t1, {c->index_of("th1")}) == one);
    CHECK(berezin_integral(one, {c->index_of("th1")}).is_zero());
    auto m = mixed_chart();
    CHECK_THROWS_AS(
        berezin_integral(SuperPoly::generator(m, "x"), {m->index_of("x")}), Error);
}

TEST_CASE("exp of nilpotent element") {
    auto c = two_odd();
    auto t1 = SuperPoly::generator(c, "th1");
    auto t2 = SuperPoly::generator(c, "th2");
    auto one = SuperPoly::constant(c, Scalar::one());
    CHECK(exp_nilpotent(t1 * t2) == one + t1 * t2);
    CHECK(exp_nilpotent(t1) == one + t1);
    CHECK_THROWS_AS(exp_nilpotent(one), Error);

    auto m = mixed_chart();
    auto x = SuperPoly::generator(m, "x");
    CHECK_THROWS_AS(exp_nilpotent(x), Error);
}

TEST_CASE("supercommutativity, derivation rule, substitution homomorphism") {
    auto c = ChartBuilder()
                 .base("x", 0)
                 .base("y", 0)
                 .base("xi", 1)
                 .with_antifibers()
                 .build();
    Rng rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        for (Parity pf : {0, 1})
            for (Parity pg : {0, 1}) {
                auto f = random_poly(rng, c, 3, pf);
                auto g = random_poly(rng, c, 3, pg);
                auto fg = f * g;
                auto gf = g * f;
                if (pf == 1 && pg == 1)
                    CHECK(fg == -gf);
                else
                    CHECK(fg == gf);
                for (const std::string& v : {"x", "xi", "xs"}) {
                    int gi = c->index_of(v);
                    Parity vp = c->gen(gi).parity;
                    auto lhs = left_derivative(fg, gi);
                    auto rhs = left_derivative(f, gi) * g +
                               ((vp * pf) % 2 ? -(f * left_derivative(g, gi))
                                              : f * left_derivative(g, gi));
                    CHECK(lhs == rhs);
                }
            }
    }

    // substitution is an algebra homomorphism
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_poly(rng, c, 3);
        auto g = random_poly(rng, c, 3);
        std::map<int, SuperPoly> sub = {
            {c->index_of("x"),
             SuperPoly::generator(c, "y") * SuperPoly::generator(c, "y")},
            {c->index_of("xi"),
             SuperPoly::generator(c, "xs") +
                 SuperPoly::generator(c, "xi") * Scalar::from_rational(2)},
        };
        CHECK(substitute(f * g, sub) == substitute(f, sub) * substitute(g, sub));
        CHECK(substitute(f + g, sub) == substitute(f, sub) + substitute(g, sub));
    }
}

TEST_CASE("expression parser") {
    auto c = mixed_chart();
    auto x = SuperPoly::generator(c, "x");
    auto xi = SuperPoly::generator(c, "xi");
    auto xs = SuperPoly::generator(c, "xs");
    CHECK(parse_expression("x^2*xi - 1/2*xs", c) ==
          x * x * xi - xs * Scalar::from_rational(Rational(1, 2)));
    CHECK(parse_expression("-(x + 3)*x", c) == -(x * x) - x * Scalar::from_rational(3));
    CHECK(parse_expression("i*hbar^-1*x", c) ==
          x * (Scalar::imag_unit() * Scalar::hbar(-1)));
    CHECK(parse_expression("xi*xi", c).is_zero());
    CHECK(parse_expression("2/4", c) ==
          SuperPoly::constant(c, Scalar::from_rational(Rational(1, 2))));
    CHECK_THROWS_AS(parse_expression("nope", c), Error);
    CHECK_THROWS_AS(parse_expression("x +", c), Error);
    CHECK_THROWS_AS(parse_expression("x 2", c), Error);
}
