#include "superkoszul/brackets.hpp"

namespace superkoszul {

VolumeData VolumeData::make(SuperPoly log_rho) {
    if (!log_rho.is_even()) throw Error("VolumeData: log_rho must be even");
    if (log_rho.depends_on([](const Generator& g) { return g.role != Role::Base; }))
        throw Error("VolumeData: log_rho must depend on base generators only");
    return {std::move(log_rho)};
}

bool is_momentum_role(Role r) {
    return r == Role::BaseMomentum || r == Role::AntifiberMomentum ||
           r == Role::TangentFiberMomentum;
}

namespace {

Role coordinate_role_of(Role momentum) {
    switch (momentum) {
        case Role::BaseMomentum: return Role::Base;
        case Role::AntifiberMomentum: return Role::Antifiber;
        case Role::TangentFiberMomentum: return Role::TangentFiber;
        default: throw Error("coordinate_role_of: not a momentum role");
    }
}

}  // namespace

std::vector<std::pair<int, int>> momentum_pairs(const Chart& chart) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < chart.size(); ++i) {
        const Generator& g = chart.gen(i);
        if (!is_momentum_role(g.role)) continue;
        int u = chart.find(coordinate_role_of(g.role), g.base_index, g.copy);
        if (u < 0)
            throw Error("momentum_pairs: momentum '" + g.name +
                        "' has no conjugate coordinate");
        out.push_back({u, i});
    }
    return out;
}

SuperPoly set_zero(const SuperPoly& f,
                   const std::function<bool(const Generator&)>& pred) {
    SuperPoly out(f.chart());
    for (const auto& [m, c] : f.terms()) {
        bool hit = false;
        for (const auto& [g, e] : m)
            if (pred(f.chart()->gen(g))) hit = true;
        if (!hit) out.add_term(m, c);
    }
    return out;
}

SuperPoly canonical_poisson(const SuperPoly& H, const SuperPoly& G) {
    auto pairs = momentum_pairs(*H.chart());
    if (pairs.empty()) throw Error("canonical_poisson: chart has no momenta");
    SuperPoly out(H.chart());
    for (Parity h : {0, 1}) {
        SuperPoly Hp = H.parity_part(h);
        if (Hp.is_zero()) continue;
        for (const auto& [u, pu] : pairs) {
            Parity ut = H.chart()->gen(u).parity;
            SuperPoly t1 = left_derivative(Hp, pu) * left_derivative(G, u);
            SuperPoly t2 = left_derivative(Hp, u) * left_derivative(G, pu);
            if ((ut * (h + 1)) % 2) t1 = -t1;
            if ((ut * h) % 2) t2 = -t2;
            out = out + t1 - t2;
        }
    }
    return out;
}

SuperPoly canonical_schouten(const SuperPoly& F, const SuperPoly& G) {
    const Chart& chart = *F.chart();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < chart.size(); ++i) {
        const Generator& g = chart.gen(i);
        if (g.role != Role::Antifiber) continue;
        int u = chart.find(Role::Base, g.base_index, g.copy);
        if (u < 0)
            throw Error("canonical_schouten: antifiber '" + g.name +
                        "' has no base coordinate");
        pairs.push_back({u, i});
    }
    if (pairs.empty()) throw Error("canonical_schouten: chart has no antifibers");
    SuperPoly out(F.chart());
    for (Parity f : {0, 1}) {
        SuperPoly Fp = F.parity_part(f);
        if (Fp.is_zero()) continue;
        for (const auto& [x, xs] : pairs) {
            Parity at = chart.gen(x).parity;
            SuperPoly t1 = left_derivative(Fp, xs) * left_derivative(G, x);
            SuperPoly t2 = left_derivative(Fp, x) * left_derivative(G, xs);
            if (f % 2) t2 = -t2;
            SuperPoly s = t1 + t2;
            if ((at * (f + 1)) % 2) s = -s;
            out = out + s;
        }
    }
    return out;
}

PStructure PStructure::make(SuperPoly P) {
    if (!P.is_even()) throw Error("PStructure: P must be even");
    SuperPoly sb = canonical_schouten(P, P);
    bool flat = sb.is_zero();
    return {std::move(P), std::move(sb), flat};
}

OddHamiltonian OddHamiltonian::make(SuperPoly H) {
    if (!H.is_odd() && !H.is_zero()) throw Error("OddHamiltonian: H must be odd");
    SuperPoly sb = canonical_poisson(H, H);
    bool flat = sb.is_zero();
    return {std::move(H), std::move(sb), flat};
}

SuperPoly higher_derived_bracket_P(const PStructure& P,
                                   const std::vector<SuperPoly>& args) {
    auto is_antifiber = [](const Generator& g) { return g.role == Role::Antifiber; };
    SuperPoly acc = P.P;
    for (const auto& a : args) {
        if (a.depends_on(is_antifiber))
            throw Error("higher_derived_bracket_P: argument depends on antifibers");
        acc = canonical_schouten(acc, a);
    }
    return set_zero(acc, is_antifiber);
}

SuperPoly higher_derived_bracket_H(const OddHamiltonian& H,
                                   const std::vector<SuperPoly>& args) {
    auto is_mom = [](const Generator& g) { return is_momentum_role(g.role); };
    SuperPoly acc = H.H;
    for (const auto& a : args) {
        if (a.depends_on(is_mom))
            throw Error("higher_derived_bracket_H: argument depends on momenta");
        acc = canonical_poisson(acc, a);
    }
    return set_zero(acc, is_mom);
}

SuperPoly de_rham_hamiltonian(ChartPtr chart, int copy) {
    SuperPoly out(chart);
    for (int dx : chart->indices(Role::TangentFiber, copy)) {
        const Generator& g = chart->gen(dx);
        int p = chart->find(Role::BaseMomentum, g.base_index, copy);
        if (p < 0) throw Error("de_rham_hamiltonian: missing base momentum");
        out = out + SuperPoly::generator(chart, dx) * SuperPoly::generator(chart, p);
    }
    if (out.is_zero() && chart->indices(Role::TangentFiber, copy).empty())
        throw Error("de_rham_hamiltonian: chart has no tangent fibers");
    return out;
}

SuperPoly de_rham(const SuperPoly& omega) {
    ChartPtr chart = omega.chart();
    SuperPoly out(chart);
    for (int dx : chart->indices(Role::TangentFiber, 0)) {
        int x = chart->find(Role::Base, chart->gen(dx).base_index, 0);
        out = out + SuperPoly::generator(chart, dx) * left_derivative(omega, x);
    }
    return out;
}

SuperPoly koszul_hamiltonian(const PStructure& P, ChartPtr chart) {
    const Chart& src = *P.P.chart();
    std::map<int, SuperPoly> sub;
    for (int xs : src.indices(Role::Antifiber, 0)) {
        int pi = chart->find(Role::TangentFiberMomentum, src.gen(xs).base_index, 0);
        if (pi < 0) throw Error("koszul_hamiltonian: chart lacks pi momenta");
        sub.emplace(xs, SuperPoly::generator(chart, pi));
    }
    SuperPoly P_pi = substitute(P.P, sub, chart);
    return -canonical_poisson(de_rham_hamiltonian(chart), P_pi);
}

SuperPoly koszul_bracket(const PStructure& P, ChartPtr chart,
                         const std::vector<SuperPoly>& args) {
    OddHamiltonian HP{koszul_hamiltonian(P, chart), SuperPoly(), false};
    return higher_derived_bracket_H(HP, args);
}

std::map<std::pair<int, int>, SuperPoly> bivector_components(const PStructure& P,
                                                             ChartPtr target) {
    ChartPtr src = P.P.chart();
    std::map<std::pair<int, int>, SuperPoly> out;
    for (int xa : src->indices(Role::Base, 0))
        for (int xb : src->indices(Role::Base, 0)) {
            SuperPoly br = higher_derived_bracket_P(
                P, {SuperPoly::generator(src, xa), SuperPoly::generator(src, xb)});
            if (src->gen(xa).parity % 2 == 0) br = -br;
            out.emplace(std::make_pair(src->gen(xa).base_index,
                                       src->gen(xb).base_index),
                        substitute(br, {}, target));
        }
    return out;
}

SuperPoly interior_product(const PStructure& P, const SuperPoly& omega) {
    ChartPtr chart = omega.chart();
    auto comps = bivector_components(P, chart);
    SuperPoly out(chart);
    for (const auto& [ab, Pab] : comps) {
        int dxa = chart->find(Role::TangentFiber, ab.first, 0);
        int dxb = chart->find(Role::TangentFiber, ab.second, 0);
        if (dxa < 0 || dxb < 0)
            throw Error("interior_product: chart lacks tangent fibers");
        out = out + Pab * left_derivative(left_derivative(omega, dxa), dxb);
    }
    return out * Scalar::from_rational(Rational(1, 2));
}

SuperPoly koszul_binary(const PStructure& P, const SuperPoly& alpha,
                        const SuperPoly& beta) {
    auto is_antifiber = [](const Generator& g) { return g.role == Role::Antifiber; };
    if (P.P.graded_part_in(is_antifiber, 2) != P.P)
        throw Error("koszul_binary: P is not a bivector");
    auto D = [&](const SuperPoly& w) {
        return de_rham(interior_product(P, w)) - interior_product(P, de_rham(w));
    };
    SuperPoly out(alpha.chart());
    for (Parity a : {0, 1}) {
        SuperPoly ap = alpha.parity_part(a);
        if (ap.is_zero()) continue;
        SuperPoly cross = ap * D(beta);
        if (a % 2) cross = -cross;
        out = out + D(ap * beta) - D(ap) * beta - cross;
    }
    return out;
}

SuperPoly lichnerowicz(const PStructure& P, const SuperPoly& F) {
    return canonical_schouten(P.P, F);
}

SuperPoly divergence(const SuperPoly& T, const VolumeData& vol) {
    ChartPtr chart = T.chart();
    SuperPoly lambda = vol.log_rho.is_zero()
                           ? SuperPoly::zero(chart)
                           : substitute(vol.log_rho, {}, chart);
    SuperPoly out(chart);
    for (int xs : chart->indices(Role::Antifiber, 0)) {
        int x = chart->find(Role::Base, chart->gen(xs).base_index, 0);
        SuperPoly d = left_derivative(T, xs);
        SuperPoly term = left_derivative(d, x) + left_derivative(lambda, x) * d;
        if (chart->gen(x).parity % 2) term = -term;
        out = out + term;
    }
    return out;
}

SuperPoly bv_residual(
    const std::function<SuperPoly(const SuperPoly&)>& Delta,
    const std::function<SuperPoly(const SuperPoly&, const SuperPoly&)>& bracket,
    const SuperPoly& a, const SuperPoly& b) {
    auto ap = a.parity();
    if (!ap) throw Error("bv_residual: first argument must be homogeneous");
    SuperPoly cross = a * Delta(b);
    if (*ap % 2) cross = -cross;
    return Delta(a * b) - Delta(a) * b - cross - bracket(a, b);
}

}  // namespace superkoszul
