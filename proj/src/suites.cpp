#include "superkoszul/suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "superkoszul/corpus.hpp"
#include "superkoszul/linfty.hpp"
#include "superkoszul/parse.hpp"

namespace superkoszul {
namespace {

using Json = nlohmann::ordered_json;
using Checks = std::vector<CheckResult>;

void pass(Checks& cs, std::string name, std::string detail = "") {
    cs.push_back({std::move(name), CheckStatus::Pass, std::move(detail)});
}
void fail(Checks& cs, std::string name, std::string detail) {
    cs.push_back({std::move(name), CheckStatus::Fail, std::move(detail)});
}
void record(Checks& cs, std::string name, bool ok, std::string fail_detail) {
    if (ok)
        pass(cs, std::move(name));
    else
        fail(cs, std::move(name), std::move(fail_detail));
}
void skip(Checks& cs, std::string name, std::string reason) {
    cs.push_back({std::move(name), CheckStatus::Skipped, std::move(reason)});
}

bool even_base(const Manifest& m) {
    for (const auto& [name, parity] : m.bases)
        if (parity != 0) return false;
    return true;
}

/// Homogeneous random operator on `c`: a few terms coefficient * momenta.
HbarOp rand_op(Rng& rng, ChartPtr c, Parity p) {
    HbarOp out(c);
    int size = c->size();
    for (int t = 0; t < 3; ++t) {
        Monomial m;
        int want = t % 3;
        for (int j = 0, tries = 0; j < want && tries < 12; ++tries) {
            int g = static_cast<int>(rng() % static_cast<unsigned>(size));
            auto mm = monomial_mul(*c, m, {{g, 1}});
            if (mm) {
                m = mm->first;
                ++j;
            }
        }
        Parity mp = monomial_parity(*c, m);
        out.add_term(m, random_poly(rng, c, 2, (p + mp) % 2, 3));
    }
    return out;
}

// Per-suite RNG streams: decorrelated but fully determined by the manifest
// seed, so a fixed (manifest, seed) pair gives a byte-identical report.
Rng suite_rng(const Manifest& m, unsigned stream) {
    return Rng(m.budgets.seed * 1000003u + stream);
}

const char* kNotFlat = "P is not a P-infinity structure ([[P,P]] != 0)";
const char* kOddBase = "requires a purely even base";

void run_pinfty(const Manifest& m, Checks& cs) {
    record(cs, "pinfty/self-bracket", m.P.is_pinfty,
           "[[P,P]] = " + m.P.self_bracket.to_string());
    if (!m.P.is_pinfty) {
        skip(cs, "pinfty/lichnerowicz-squared", kNotFlat);
        return;
    }
    Rng rng = suite_rng(m, 1);
    int bad = 0;
    std::string witness;
    for (int t = 0; t < m.budgets.corpus_size; ++t) {
        SuperPoly f = random_poly(rng, m.pair.Edual, m.budgets.corpus_degree);
        SuperPoly r = lichnerowicz(m.P, lichnerowicz(m.P, f));
        if (!r.is_zero() && bad++ == 0) witness = r.to_string();
    }
    record(cs, "pinfty/lichnerowicz-squared", bad == 0,
           std::to_string(bad) + " nonzero d_P^2 residuals, first: " + witness);
}

void run_koszul(const Manifest& m, Checks& cs) {
    if (!m.P.is_pinfty) {
        skip(cs, "koszul/hamiltonian-flat", kNotFlat);
        skip(cs, "koszul/binary-table", kNotFlat);
        return;
    }
    auto HP = OddHamiltonian::make(koszul_hamiltonian(m.P, m.pair.TE));
    record(cs, "koszul/hamiltonian-flat", HP.is_sinfty,
           "{H_P,H_P} = " + HP.self_bracket.to_string());

    auto anti = [](const Generator& g) { return g.role == Role::Antifiber; };
    bool bivector = !m.P.P.is_zero() &&
                    m.P.P == m.P.P.graded_part_in(anti, 2);
    if (!bivector) {
        skip(cs, "koszul/binary-table",
             "P is not a bivector; the classical table applies to quadratic "
             "P only");
        return;
    }
    ChartPtr E = m.pair.E;
    auto comps = bivector_components(m.P, E);
    int bad = 0;
    std::string witness;
    for (int xa : E->indices(Role::Base, 0))
        for (int xb : E->indices(Role::Base, 0)) {
            int a = E->gen(xa).base_index, b = E->gen(xb).base_index;
            SuperPoly Xa = SuperPoly::generator(E, xa);
            SuperPoly Xb = SuperPoly::generator(E, xb);
            SuperPoly dXa =
                SuperPoly::generator(E, E->find(Role::TangentFiber, a, 0));
            SuperPoly dXb =
                SuperPoly::generator(E, E->find(Role::TangentFiber, b, 0));
            const SuperPoly& Pab = comps.at({a, b});
            bool ok = koszul_binary(m.P, Xa, Xb).is_zero() &&
                      koszul_binary(m.P, Xa, dXb) == -Pab &&
                      koszul_binary(m.P, dXa, dXb) == de_rham(Pab);
            if (!ok && bad++ == 0)
                witness = "at base pair (" + E->gen(xa).name + "," +
                          E->gen(xb).name + ")";
        }
    record(cs, "koszul/binary-table", bad == 0,
           std::to_string(bad) + " table entries off, first " + witness);
}

void run_jacobi(const Manifest& m, Checks& cs) {
    if (!m.P.is_pinfty) {
        skip(cs, "jacobi/derived-brackets", kNotFlat);
        return;
    }
    BracketFamily fam;
    fam.version = LVersion::Antisymmetric;
    const PStructure& P = m.P;
    for (int k = 0; k <= 4; ++k)
        fam.ops[k] = [&P](const std::vector<SuperPoly>& args) {
            return higher_derived_bracket_P(P, args);
        };
    Rng rng = suite_rng(m, 3);
    auto base_only = [](const Generator& g) { return g.role == Role::Base; };
    std::vector<std::vector<SuperPoly>> corpus;
    for (int t = 0; t < m.budgets.corpus_size; ++t) {
        std::vector<SuperPoly> tuple;
        for (int j = 0; j < 1 + t % 3; ++j)
            tuple.push_back(random_poly_in(rng, m.pair.Edual,
                                           m.budgets.corpus_degree, base_only,
                                           static_cast<Parity>(t % 2), 3));
        corpus.push_back(tuple);
    }
    auto rep = check_higher_jacobi(fam, corpus, 3);
    std::string witness =
        rep.ok() ? "" : rep.failures.front().residual.to_string();
    record(cs, "jacobi/derived-brackets", rep.ok(),
           std::to_string(rep.failures.size()) + "/" +
               std::to_string(rep.checks) + " tuples fail, first residual: " +
               witness);
}

void run_symbols(const Manifest& m, Checks& cs) {
    Rng rng = suite_rng(m, 4);
    ChartPtr c = m.pair.E;
    ChartPtr ct = m.pair.TE;
    int bad_prod = 0, bad_comm = 0;
    std::string w_prod, w_comm;
    for (int t = 0; t < m.budgets.corpus_size; ++t) {
        HbarOp A = rand_op(rng, c, t % 2);
        HbarOp B = rand_op(rng, c, (t + 1) % 2);
        SuperPoly sa = principal_symbol(A, ct);
        SuperPoly sb = principal_symbol(B, ct);
        SuperPoly rp = principal_symbol(A * B, ct) - sa * sb;
        if (!rp.is_zero() && bad_prod++ == 0) w_prod = rp.to_string();
        HbarOp br = commutator(A, B) * (Scalar::imag_unit() * Scalar::hbar(-1));
        SuperPoly rc = principal_symbol(br, ct) - canonical_poisson(sa, sb);
        if (!rc.is_zero() && bad_comm++ == 0) w_comm = rc.to_string();
    }
    record(cs, "symbols/product", bad_prod == 0,
           std::to_string(bad_prod) + " residuals, first: " + w_prod);
    record(cs, "symbols/commutator-poisson", bad_comm == 0,
           std::to_string(bad_comm) + " residuals, first: " + w_comm);
}

void run_quantum_brackets(const Manifest& m, Checks& cs) {
    HbarOp Delta = build_Delta_P(m.P, m.pair.E);
    HbarOp sq = compose(Delta, Delta);
    if (m.P.is_pinfty)
        record(cs, "quantum-brackets/delta-squared", sq.is_zero(),
               "Delta_P^2 = " + sq.to_string());
    else
        record(cs, "quantum-brackets/delta-squared-obstruction", !sq.is_zero(),
               "Delta_P^2 vanishes although [[P,P]] != 0");
    record(cs, "quantum-brackets/symbol",
           principal_symbol(Delta, m.pair.TE) ==
               koszul_hamiltonian(m.P, m.pair.TE),
           "symb(Delta_P) differs from H_P");

    Rng rng = suite_rng(m, 5);
    int bad = 0;
    std::string witness;
    for (int t = 0; t < m.budgets.corpus_size; ++t) {
        int n = 1 + t % 3;
        std::vector<SuperPoly> args, args_big;
        for (int j = 0; j < n; ++j) {
            SuperPoly w = random_poly(rng, m.pair.E, 2, (t + j) % 2, 3);
            args.push_back(w);
            args_big.push_back(substitute(w, {}, m.pair.TE));
        }
        SuperPoly r = substitute(classical_bracket(Delta, args), {}, m.pair.TE) -
                      koszul_bracket(m.P, m.pair.TE, args_big);
        if (!r.is_zero() && bad++ == 0) witness = r.to_string();
    }
    record(cs, "quantum-brackets/classical-limit", bad == 0,
           std::to_string(bad) + " residuals, first: " + witness);
}

void run_mx(const Manifest& m, Checks& cs) {
    const DualPair& pr = m.pair;
    // Generator rules of the quantum MX transformation.
    {
        int bad = 0;
        std::string witness;
        SuperPoly mih = SuperPoly::constant(pr.Edual, Scalar::neg_i_hbar_pow(1));
        for (int xa : pr.base->indices(Role::Base, 0)) {
            const Generator& g = pr.base->gen(xa);
            int a = g.base_index;
            int dxi = pr.E->find(Role::TangentFiber, a, 0);
            int xsi = pr.Edual->find(Role::Antifiber, a, 0);
            int xE = pr.E->find(Role::Base, a, 0);
            int xD = pr.Edual->find(Role::Base, a, 0);
            HbarOp pxs = HbarOp::momentum(pr.Edual, xsi);
            SuperPoly lam = substitute(
                left_derivative(m.vol.log_rho, g.name), {}, pr.Edual);
            bool ok =
                quantum_mx(
                    HbarOp::multiplication(SuperPoly::generator(pr.E, dxi)),
                    pr, m.vol) == (g.parity ? pxs : -pxs) &&
                quantum_mx(HbarOp::momentum(pr.E, dxi), pr, m.vol) ==
                    HbarOp::multiplication(SuperPoly::generator(pr.Edual, xsi)) &&
                quantum_mx(
                    HbarOp::multiplication(SuperPoly::generator(pr.E, xE)),
                    pr, m.vol) ==
                    HbarOp::multiplication(SuperPoly::generator(pr.Edual, xD)) &&
                quantum_mx(HbarOp::momentum(pr.E, xE), pr, m.vol) ==
                    -HbarOp::momentum(pr.Edual, xD) -
                        HbarOp::multiplication(lam * mih.coefficient({}));
            if (!ok && bad++ == 0) witness = "at base coordinate " + g.name;
        }
        record(cs, "mx/generator-rules", bad == 0,
               std::to_string(bad) + " rules off, first " + witness);
    }
    // Involution and anti-homomorphism on random operators.
    {
        Rng rng = suite_rng(m, 6);
        int bad = 0;
        for (int t = 0; t < m.budgets.corpus_size; ++t) {
            Parity pa = t % 2, pb = (t / 2) % 2;
            HbarOp A = rand_op(rng, pr.E, pa);
            HbarOp B = rand_op(rng, pr.E, pb);
            HbarOp rhs = quantum_mx(B, pr, m.vol) * quantum_mx(A, pr, m.vol);
            if (pa * pb) rhs = -rhs;
            if (quantum_mx(A * B, pr, m.vol) != rhs) ++bad;
            if (quantum_mx(quantum_mx(A, pr, m.vol), pr, m.vol) != A) ++bad;
        }
        record(cs, "mx/involution", bad == 0,
               std::to_string(bad) + " operators fail the involution or "
                                     "product rule");
    }
    // The pairing oracle needs Berezin integrals over purely odd fibers.
    if (!even_base(m)) {
        skip(cs, "mx/adjoint-oracle", kOddBase);
    } else {
        Rng rng = suite_rng(m, 7);
        std::vector<std::pair<SuperPoly, SuperPoly>> corpus;
        for (int t = 0; t < m.budgets.corpus_size; ++t)
            corpus.push_back({random_poly(rng, pr.E, 2, t % 2),
                              random_poly(rng, pr.Edual, 2, (t / 2) % 2)});
        int bad = 0;
        for (int t = 0; t < 4; ++t) {
            HbarOp A = rand_op(rng, pr.E, t % 2);
            if (!pairing_adjoint_oracle(A, quantum_mx(A, pr, m.vol), pr, m.vol,
                                        corpus)
                     .ok())
                ++bad;
        }
        record(cs, "mx/adjoint-oracle", bad == 0,
               std::to_string(bad) + " operators fail the pairing oracle");
    }
    if (!m.P.is_pinfty) {
        skip(cs, "mx/delta-p-star", kNotFlat);
    } else {
        try {
            delta_P_star(m.P, pr, m.vol);
            pass(cs, "mx/delta-p-star");
        } catch (const Error& e) {
            fail(cs, "mx/delta-p-star", e.what());
        }
    }
}

void run_modular(const Manifest& m, Checks& cs) {
    if (!m.P.is_pinfty) {
        skip(cs, "modular/cocycle", kNotFlat);
        skip(cs, "modular/gauge-law", kNotFlat);
        skip(cs, "modular/potential", kNotFlat);
        return;
    }
    SuperPoly mu = divergence(m.P.P, m.vol);
    SuperPoly coc = lichnerowicz(m.P, mu);
    record(cs, "modular/cocycle", coc.is_zero(),
           "d_P(delta_rho(P)) = " + coc.to_string());

    Rng rng = suite_rng(m, 8);
    auto base_only = [](const Generator& g) { return g.role == Role::Base; };
    int bad = 0;
    std::string witness;
    for (int t = 0; t < m.budgets.corpus_size; ++t) {
        SuperPoly f = random_poly_in(rng, m.pair.base, m.budgets.corpus_degree,
                                     base_only, 0, 3);
        VolumeData vol2 = VolumeData::make(m.vol.log_rho + f);
        SuperPoly r = divergence(m.P.P, vol2) - mu -
                      lichnerowicz(m.P, substitute(f, {}, m.pair.Edual));
        if (!r.is_zero() && bad++ == 0) witness = r.to_string();
    }
    record(cs, "modular/gauge-law", bad == 0,
           std::to_string(bad) + " residuals, first: " + witness);

    if (m.F) {
        SuperPoly r = mu - lichnerowicz(m.P, *m.F);
        record(cs, "modular/potential", r.is_zero(),
               "delta_rho(P) - d_P(F) = " + r.to_string());
    } else if (mu.is_zero()) {
        pass(cs, "modular/potential", "delta_rho(P) = 0, trivial class");
    } else if (auto F = solve_modular_potential(m.P, m.vol,
                                                m.budgets.corpus_degree + 1)) {
        pass(cs, "modular/potential", "solver found F = " + F->to_string());
    } else {
        skip(cs, "modular/potential",
             "no F supplied and none found up to degree " +
                 std::to_string(m.budgets.corpus_degree + 1) +
                 "; modular class may be nontrivial");
    }
}

void run_thick(const Manifest& m, Checks& cs) {
    const DualPair& pr = m.pair;
    if (!m.P.is_pinfty) {
        for (const char* n :
             {"thick/anchor-phi-related", "thick/dual-phi-related",
              "thick/pullback-vs-substitution", "thick/chain-map",
              "thick/anchor-kernel"})
            skip(cs, n, kNotFlat);
        return;
    }
    SuperPoly HSch = schouten_hamiltonian(pr.TEdual);
    SuperPoly HdP =
        -canonical_poisson(HSch, substitute(m.P.P, {}, pr.TEdual));
    PhiReport ra = check_phi_related(HdP, de_rham_hamiltonian(pr.TE),
                                     anchor_genfun(m.P, pr));
    record(cs, "thick/anchor-phi-related", ra.ok(),
           "residual: " + ra.residual.to_string());
    PhiReport rd = check_phi_related(HSch, koszul_hamiltonian(m.P, pr.TE),
                                     dual_genfun(m.P, pr));
    record(cs, "thick/dual-phi-related", rd.ok(),
           "residual: " + rd.residual.to_string());

    Rng rng = suite_rng(m, 9);
    GenFunction an = anchor_genfun(m.P, pr);
    int bad_pull = 0, bad_chain = 0;
    std::string w_pull, w_chain;
    for (int t = 0; t < m.budgets.corpus_size; ++t) {
        SuperPoly g = random_poly(rng, pr.E, m.budgets.corpus_degree, 0, 3);
        SuperPoly r = thick_pullback(an, g, m.budgets.momentum_order) -
                      classical_anchor_pullback(m.P, g, pr);
        if (!r.is_zero() && bad_pull++ == 0) w_pull = r.to_string();
        SuperPoly w = random_poly(rng, pr.E, m.budgets.corpus_degree, t % 2, 3);
        SuperPoly rc =
            lichnerowicz(m.P, classical_anchor_pullback(m.P, w, pr)) +
            classical_anchor_pullback(m.P, de_rham(w), pr);
        if (!rc.is_zero() && bad_chain++ == 0) w_chain = rc.to_string();
    }
    record(cs, "thick/pullback-vs-substitution", bad_pull == 0,
           std::to_string(bad_pull) + " residuals, first: " + w_pull);
    record(cs, "thick/chain-map", bad_chain == 0,
           std::to_string(bad_chain) + " residuals, first: " + w_chain);

    if (!even_base(m)) {
        skip(cs, "thick/anchor-kernel", kOddBase);
        return;
    }
    KernelOperator K = anchor_kernel(m.P, pr);
    int bad_k = 0;
    std::string w_k;
    for (int t = 0; t < m.budgets.corpus_size; ++t) {
        SuperPoly f = random_poly(rng, pr.E, m.budgets.corpus_degree);
        SuperPoly r =
            quantum_pullback(K, f) - classical_anchor_pullback(m.P, f, pr);
        if (!r.is_zero() && bad_k++ == 0) w_k = r.to_string();
    }
    record(cs, "thick/anchor-kernel", bad_k == 0,
           std::to_string(bad_k) + " residuals, first: " + w_k);
}

void run_intertwine(const Manifest& m, Checks& cs) {
    const char* name = "intertwine/diagram";
    if (!m.P.is_pinfty) {
        skip(cs, name, kNotFlat);
        return;
    }
    if (!even_base(m)) {
        skip(cs, name, kOddBase);
        return;
    }
    SuperPoly mu = divergence(m.P.P, m.vol);
    if (!mu.is_zero() && !m.F) {
        skip(cs, name,
             "modular obstruction: delta_rho(P) = " + mu.to_string() +
                 " and no gauge potential F supplied");
        return;
    }
    Rng rng = suite_rng(m, 10);
    std::vector<SuperPoly> corpus;
    for (int t = 0; t < m.budgets.corpus_size; ++t)
        corpus.push_back(
            random_poly(rng, m.pair.E, m.budgets.corpus_degree, 0, 3));
    try {
        IntertwineReport rep = check_intertwining(m.P, m.pair, m.vol, m.F,
                                                  corpus);
        if (!rep.precondition_ok)
            fail(cs, name,
                 "delta_rho(P) - d_P(F) = " +
                     rep.precondition_residual.to_string());
        else
            record(cs, name, rep.ok(),
                   std::to_string(rep.failures) + "/" +
                       std::to_string(rep.checks) + " corpus forms fail");
    } catch (const Error& e) {
        fail(cs, name, e.what());
    }
}

using SuiteFn = void (*)(const Manifest&, Checks&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"pinfty", run_pinfty},
        {"koszul", run_koszul},
        {"jacobi", run_jacobi},
        {"symbols", run_symbols},
        {"quantum-brackets", run_quantum_brackets},
        {"mx", run_mx},
        {"modular", run_modular},
        {"thick", run_thick},
        {"intertwine", run_intertwine},
    };
    return table;
}

const char* status_word(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "skip";
    }
}

int require_parity(const Json& v, const std::string& where) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
        throw Error("manifest: parity must be 0 or 1 in " + where);
    return v.get<int>();
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, fn] : suite_table()) out.push_back(n);
        out.push_back("all");
        return out;
    }();
    return names;
}

Manifest parse_manifest_text(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw Error(std::string("manifest: ") + e.what());
    }
    if (!j.is_object()) throw Error("manifest: top level must be an object");

    Manifest m;
    if (!j.contains("chart") || !j["chart"].is_array() || j["chart"].empty())
        throw Error("manifest: \"chart\" must be a non-empty array");
    for (const auto& g : j["chart"]) {
        if (!g.is_object() || !g.contains("name") || !g["name"].is_string())
            throw Error("manifest: chart entries need a \"name\" string");
        std::string name = g["name"].get<std::string>();
        if (name.empty()) throw Error("manifest: empty generator name");
        int parity = g.contains("parity")
                         ? require_parity(g["parity"], "chart entry " + name)
                         : 0;
        m.bases.emplace_back(name, parity);
    }

    if (j.contains("budgets")) {
        const Json& b = j["budgets"];
        if (!b.is_object()) throw Error("manifest: \"budgets\" must be an object");
        auto geti = [&b](const char* key, int dflt, int lo, int hi) {
            if (!b.contains(key)) return dflt;
            if (!b[key].is_number_integer())
                throw Error(std::string("manifest: budget \"") + key +
                            "\" must be an integer");
            int v = b[key].get<int>();
            if (v < lo || v > hi)
                throw Error(std::string("manifest: budget \"") + key +
                            "\" out of range");
            return v;
        };
        m.budgets.hbar_order = geti("hbar_order", 4, 1, 16);
        m.budgets.momentum_order = geti("momentum_order", 4, 1, 16);
        m.budgets.corpus_degree = geti("corpus_degree", 3, 1, 6);
        m.budgets.corpus_size = geti("corpus_size", 8, 1, 200);
        m.budgets.seed = static_cast<unsigned>(
            geti("seed", 1, 0, std::numeric_limits<int>::max()));
    }

    m.pair = DualPair::make(m.bases);

    if (!j.contains("P") || !j["P"].is_string())
        throw Error("manifest: \"P\" must be an expression string");
    m.p_text = j["P"].get<std::string>();
    m.P = PStructure::make(parse_expression(m.p_text, m.pair.Edual));

    m.log_rho_text =
        j.contains("log_rho") ? j["log_rho"].get<std::string>() : "0";
    m.vol = VolumeData::make(parse_expression(m.log_rho_text, m.pair.base));

    if (j.contains("F")) {
        if (!j["F"].is_string())
            throw Error("manifest: \"F\" must be an expression string");
        m.f_text = j["F"].get<std::string>();
        SuperPoly F = parse_expression(*m.f_text, m.pair.Edual);
        if (!F.is_even()) throw Error("manifest: F must be even");
        m.F = F;
    }
    return m;
}

Manifest parse_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("manifest: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest_text(buf.str());
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

std::string Report::render_text(bool color) const {
    auto paint = [color](const char* code, const std::string& s) {
        if (!color) return s;
        return std::string("\033[") + code + "m" + s + "\033[0m";
    };
    std::ostringstream out;
    out << "suite: " << suite << "\n";
    out << "seed: " << seed << "\n";
    out << "budgets: hbar=" << budgets.hbar_order
        << " momentum=" << budgets.momentum_order
        << " degree=" << budgets.corpus_degree
        << " corpus=" << budgets.corpus_size << "\n";
    int np = 0, nf = 0, ns = 0;
    for (const auto& c : checks) {
        switch (c.status) {
            case CheckStatus::Pass:
                ++np;
                out << paint("32", "PASS") << " " << c.name;
                break;
            case CheckStatus::Fail:
                ++nf;
                out << paint("31", "FAIL") << " " << c.name << ": " << c.detail;
                break;
            default:
                ++ns;
                out << paint("33", "SKIP") << " " << c.name << ": " << c.detail;
        }
        out << "\n";
    }
    out << "summary: " << np << " passed, " << nf << " failed, " << ns
        << " skipped\n";
    return out.str();
}

std::string Report::render_json() const {
    Json j;
    j["schema"] = 1;
    j["suite"] = suite;
    j["seed"] = seed;
    j["budgets"] = {{"hbar_order", budgets.hbar_order},
                    {"momentum_order", budgets.momentum_order},
                    {"corpus_degree", budgets.corpus_degree},
                    {"corpus_size", budgets.corpus_size}};
    j["checks"] = Json::array();
    int np = 0, nf = 0, ns = 0;
    for (const auto& c : checks) {
        Json e;
        e["name"] = c.name;
        e["status"] = status_word(c.status);
        if (!c.detail.empty() || c.status != CheckStatus::Pass)
            e["detail"] = c.detail;
        j["checks"].push_back(e);
        if (c.status == CheckStatus::Pass) ++np;
        else if (c.status == CheckStatus::Fail) ++nf;
        else ++ns;
    }
    j["summary"] = {{"pass", np}, {"fail", nf}, {"skip", ns}};
    j["all_pass"] = nf == 0;
    return j.dump(2) + "\n";
}

Report run_suite(const Manifest& m, const std::string& suite) {
    Report rep;
    rep.suite = suite;
    rep.seed = m.budgets.seed;
    rep.budgets = m.budgets;
    bool found = false;
    for (const auto& [name, fn] : suite_table()) {
        if (suite == "all" || suite == name) {
            fn(m, rep.checks);
            found = true;
        }
    }
    if (!found) throw Error("unknown suite: " + suite);
    std::sort(rep.checks.begin(), rep.checks.end(),
              [](const CheckResult& a, const CheckResult& b) {
                  return a.name < b.name;
              });
    return rep;
}

}  // namespace superkoszul
