#include "superkoszul/hbarop.hpp"

#include <sstream>

namespace superkoszul {

HbarOp HbarOp::identity(ChartPtr chart) {
    HbarOp out(chart);
    out.add_term({}, SuperPoly::constant(std::move(chart), Scalar::one()));
    return out;
}

HbarOp HbarOp::multiplication(SuperPoly f) {
    HbarOp out(f.chart());
    out.add_term({}, std::move(f));
    return out;
}

HbarOp HbarOp::momentum(ChartPtr chart, int gen_index) {
    HbarOp out(chart);
    out.add_term({{gen_index, 1}},
                 SuperPoly::constant(std::move(chart), Scalar::one()));
    return out;
}

std::optional<Parity> HbarOp::parity() const {
    std::optional<Parity> out;
    for (const auto& [m, c] : terms_) {
        auto cp = c.parity();
        if (!cp) return std::nullopt;
        Parity p = (*cp + monomial_parity(*chart_, m)) % 2;
        if (out && *out != p) return std::nullopt;
        out = p;
    }
    return out ? out : std::optional<Parity>(0);
}

HbarOp HbarOp::operator+(const HbarOp& o) const {
    HbarOp out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

HbarOp HbarOp::operator-(const HbarOp& o) const { return *this + (-o); }

HbarOp HbarOp::operator-() const {
    HbarOp out(chart_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

HbarOp HbarOp::operator*(const Scalar& s) const {
    HbarOp out(chart_);
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
}

void HbarOp::add_term(const Monomial& slots, const SuperPoly& coef) {
    if (coef.is_zero()) return;
    auto [it, fresh] = terms_.emplace(slots, coef);
    if (!fresh) {
        it->second = it->second + coef;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {

/// phat_m composed with multiplication by b, normal-ordered: a map from slot
/// monomials to coefficient functions.
std::map<Monomial, SuperPoly> slots_past(const Chart& chart, const Monomial& m,
                                         const SuperPoly& b) {
    std::map<Monomial, SuperPoly> out;
    if (b.is_zero()) return out;
    if (m.empty()) {
        out.emplace(Monomial{}, b);
        return out;
    }
    // Strip one factor off the right, next to b:
    //   phat_m M_b = (-1)^{s~ b~} (phat_rest M_b) phat_s + phat_rest M_{phat_s(b)}
    Monomial rest = m;
    int s = rest.back().first;
    if (--rest.back().second == 0) rest.pop_back();
    Parity st = chart.gen(s).parity;
    for (Parity pb : {0, 1}) {
        SuperPoly bp = b.parity_part(pb);
        if (bp.is_zero()) continue;
        if ((st * pb) % 2) bp = -bp;
        for (const auto& [k, c] : slots_past(chart, rest, bp)) {
            auto mk = monomial_mul(chart, k, {{s, 1}});
            if (!mk) continue;
            SuperPoly add = mk->second < 0 ? -c : c;
            auto [it, fresh] = out.emplace(mk->first, add);
            if (!fresh) {
                it->second = it->second + add;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    SuperPoly db = left_derivative(b, s) * Scalar::neg_i_hbar_pow(1);
    for (const auto& [k, c] : slots_past(chart, rest, db)) {
        auto [it, fresh] = out.emplace(k, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

}  // namespace

HbarOp HbarOp::operator*(const HbarOp& o) const {
    if (!chart_->same_as(*o.chart_)) throw Error("HbarOp: chart mismatch");
    HbarOp out(chart_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            for (const auto& [k, c] : slots_past(*chart_, ma, cb)) {
                auto mk = monomial_mul(*chart_, k, mb);
                if (!mk) continue;
                SuperPoly coef = ca * c;
                if (mk->second < 0) coef = -coef;
                out.add_term(mk->first, coef);
            }
    return out;
}

SuperPoly HbarOp::apply(const SuperPoly& f) const {
    SuperPoly out(f.chart());
    for (const auto& [m, c] : terms_) {
        SuperPoly g = f;
        for (auto it = m.rbegin(); it != m.rend() && !g.is_zero(); ++it)
            for (int e = 0; e < it->second; ++e)
                g = left_derivative(g, it->first) * Scalar::neg_i_hbar_pow(1);
        out = out + c * g;
    }
    return out;
}

int HbarOp::max_total_degree() const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        int slots = monomial_degree(m);
        for (const auto& [cm, s] : c.terms())
            for (const auto& [key, v] : s.terms())
                best = std::max(best, slots + key.first);
    }
    return best;
}

HbarOp HbarOp::graded_component(int n) const {
    HbarOp out(chart_);
    for (const auto& [m, c] : terms_) {
        int h = n - monomial_degree(m);
        SuperPoly keep(chart_);
        for (const auto& [cm, s] : c.terms()) {
            Scalar part(s.hbar_truncation(), s.t_truncation());
            for (const auto& [key, v] : s.terms())
                if (key.first == h)
                    part = part + Scalar::from_gauss(v, key.first, key.second);
            if (!part.is_zero()) keep.add_term(cm, part);
        }
        out.add_term(m, keep);
    }
    return out;
}

std::string HbarOp::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << "  +  ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (const auto& [g, e] : m) {
            os << " P[" << chart_->gen(g).name << "]";
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

HbarOp compose(const HbarOp& A, const HbarOp& B) { return A * B; }

namespace {

HbarOp op_parity_part(const HbarOp& A, Parity p) {
    HbarOp out(A.chart());
    for (const auto& [m, c] : A.terms()) {
        Parity mp = monomial_parity(*A.chart(), m);
        out.add_term(m, c.parity_part((p + mp) % 2));
    }
    return out;
}

}  // namespace

HbarOp commutator(const HbarOp& A, const HbarOp& B) {
    HbarOp out(A.chart());
    for (Parity pa : {0, 1}) {
        HbarOp Ap = op_parity_part(A, pa);
        if (Ap.is_zero()) continue;
        for (Parity pb : {0, 1}) {
            HbarOp Bp = op_parity_part(B, pb);
            if (Bp.is_zero()) continue;
            HbarOp ba = Bp * Ap;
            if ((pa * pb) % 2) ba = -ba;
            out = out + Ap * Bp - ba;
        }
    }
    for (const auto& [m, c] : out.terms())
        if (!c.divisible_by_hbar(1))
            throw Error("commutator: result not divisible by hbar");
    return out;
}

SuperPoly principal_symbol(const HbarOp& L, ChartPtr target) {
    const Chart& src = *L.chart();
    SuperPoly out(target);
    for (const auto& [m, c] : L.terms()) {
        SuperPoly term = substitute(c.mod_hbar(), {}, target);
        for (const auto& [g, e] : m) {
            Role mom;
            switch (src.gen(g).role) {
                case Role::Base: mom = Role::BaseMomentum; break;
                case Role::Antifiber: mom = Role::AntifiberMomentum; break;
                case Role::TangentFiber: mom = Role::TangentFiberMomentum; break;
                default:
                    throw Error("principal_symbol: no momentum for slot '" +
                                src.gen(g).name + "'");
            }
            int p = target->find(mom, src.gen(g).base_index, src.gen(g).copy);
            if (p < 0)
                throw Error("principal_symbol: target chart lacks momentum of '" +
                            src.gen(g).name + "'");
            for (int j = 0; j < e; ++j)
                term = term * SuperPoly::generator(target, p);
        }
        out = out + term;
    }
    return out;
}

SuperPoly quantum_bracket(const HbarOp& L, const std::vector<SuperPoly>& args) {
    HbarOp acc = L;
    for (const auto& f : args)
        acc = commutator(acc, HbarOp::multiplication(f));
    SuperPoly val = acc.apply(
        SuperPoly::constant(L.chart(), Scalar::one()));
    int n = static_cast<int>(args.size());
    if (!val.divisible_by_hbar(n))
        throw Error("quantum_bracket: commutator not divisible by hbar^n");
    return val * Scalar::neg_i_hbar_pow(-n);
}

SuperPoly classical_bracket(const HbarOp& L, const std::vector<SuperPoly>& args) {
    return quantum_bracket(L, args).mod_hbar();
}

HbarOp de_rham_operator(ChartPtr chart) {
    HbarOp out(chart);
    auto fibers = chart->indices(Role::TangentFiber, 0);
    if (fibers.empty()) throw Error("de_rham_operator: chart has no tangent fibers");
    for (int dx : fibers) {
        int x = chart->find(Role::Base, chart->gen(dx).base_index, 0);
        out.add_term({{x, 1}}, SuperPoly::generator(chart, dx));
    }
    return out;
}

HbarOp multivector_operator(const PStructure& P, ChartPtr chart) {
    const Chart& src = *P.P.chart();
    HbarOp out(chart);
    for (const auto& [m, c] : P.P.terms()) {
        SuperPoly coef = SuperPoly::constant(chart, c);
        Monomial slots;
        for (const auto& [g, e] : m) {
            const Generator& gen = src.gen(g);
            if (gen.role == Role::Base) {
                int x = chart->try_index_of(gen.name)
                            ? *chart->try_index_of(gen.name)
                            : -1;
                if (x < 0)
                    throw Error("multivector_operator: chart lacks '" + gen.name + "'");
                for (int j = 0; j < e; ++j)
                    coef = coef * SuperPoly::generator(chart, x);
            } else if (gen.role == Role::Antifiber) {
                int dx = chart->find(Role::TangentFiber, gen.base_index, gen.copy);
                if (dx < 0)
                    throw Error("multivector_operator: chart lacks the fiber of '" +
                                gen.name + "'");
                slots.push_back({dx, e});
            } else {
                throw Error("multivector_operator: unexpected generator '" +
                            gen.name + "' in P");
            }
        }
        out.add_term(slots, coef);
    }
    return out;
}

HbarOp build_Delta_P(const PStructure& P, ChartPtr chart) {
    HbarOp D = de_rham_operator(chart);
    HbarOp Ph = multivector_operator(P, chart);
    // Delta_P = -[d, Phat] = -(-i hbar)^{-1} [-i hbar d, Phat].
    return commutator(D, Ph) * (-Scalar::neg_i_hbar_pow(-1));
}

HbarOp build_D_dP(const PStructure& P, const SuperPoly& F0) {
    ChartPtr chart = P.P.chart();
    if (!F0.is_zero() && !F0.is_odd())
        throw Error("build_D_dP: F0 must be odd");
    if (!lichnerowicz(P, F0).is_zero())
        throw Error("build_D_dP: d_P(F0) != 0");
    HbarOp out(chart);
    for (int i = 0; i < chart->size(); ++i) {
        SuperPoly coef = canonical_schouten(P.P, SuperPoly::generator(chart, i));
        if (!coef.is_zero()) out.add_term({{i, 1}}, coef);
    }
    out.add_term({}, F0 * Scalar::neg_i_hbar_pow(1));
    return out;
}

}  // namespace superkoszul
