#include "superkoszul/linfty.hpp"

#include <algorithm>

namespace superkoszul {

std::vector<std::vector<int>> shuffles(int k, int l) {
    if (k < 0 || l < 0) throw Error("shuffles: negative count");
    int n = k + l;
    if (n > 20) throw Error("shuffles: count too large");
    std::vector<std::vector<int>> out;
    for (unsigned long m = 0; m < (1ul << n); ++m) {
        if (__builtin_popcountl(m) != k) continue;
        std::vector<int> perm;
        perm.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            if (m & (1ul << i)) perm.push_back(i);
        for (int i = 0; i < n; ++i)
            if (!(m & (1ul << i))) perm.push_back(i);
        out.push_back(std::move(perm));
    }
    return out;
}

int perm_sign(const std::vector<int>& perm) {
    int s = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) s = -s;
    return s;
}

int koszul_sign(const std::vector<int>& perm, const std::vector<Parity>& parities) {
    if (perm.size() != parities.size())
        throw Error("koszul_sign: length mismatch");
    int s = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && parities[static_cast<size_t>(perm[i])] % 2 &&
                parities[static_cast<size_t>(perm[j])] % 2)
                s = -s;
    return s;
}

SuperPoly jacobi_residual(const BracketFamily& fam,
                          const std::vector<SuperPoly>& args,
                          const std::vector<Parity>& parities) {
    int n = static_cast<int>(args.size());
    if (n == 0) throw Error("jacobi_residual: empty argument tuple");
    if (parities.size() != args.size())
        throw Error("jacobi_residual: parity list mismatch");
    SuperPoly res(args.front().chart());
    for (int k = 0; k <= n; ++k) {
        int l = n - k;
        if (!fam.has(k) || !fam.has(l + 1)) continue;
        for (const auto& sigma : shuffles(k, l)) {
            int c = koszul_sign(sigma, parities);
            if (fam.version == LVersion::Antisymmetric) {
                c *= perm_sign(sigma);
                if ((k * l) % 2) c = -c;
            }
            std::vector<SuperPoly> inner;
            inner.reserve(static_cast<size_t>(k));
            for (int j = 0; j < k; ++j)
                inner.push_back(args[static_cast<size_t>(sigma[static_cast<size_t>(j)])]);
            std::vector<SuperPoly> outer;
            outer.reserve(static_cast<size_t>(l) + 1);
            outer.push_back(fam.apply(k, inner));
            for (int j = k; j < n; ++j)
                outer.push_back(args[static_cast<size_t>(sigma[static_cast<size_t>(j)])]);
            res = res + fam.apply(l + 1, outer) * Scalar::from_rational(Rational(c));
        }
    }
    return res;
}

SuperPoly jacobi_residual(const BracketFamily& fam,
                          const std::vector<SuperPoly>& args) {
    std::vector<Parity> parities;
    for (const auto& a : args) {
        auto p = a.parity();
        if (!p) throw Error("jacobi_residual: inhomogeneous argument");
        parities.push_back((*p + fam.parity_shift) % 2);
    }
    return jacobi_residual(fam, args, parities);
}

JacobiReport check_higher_jacobi(const BracketFamily& fam,
                                 const std::vector<std::vector<SuperPoly>>& corpus,
                                 int n_max) {
    JacobiReport report;
    for (const auto& tuple : corpus) {
        int n = static_cast<int>(tuple.size());
        if (n < 1 || n > n_max) continue;
        ++report.checks;
        SuperPoly res = jacobi_residual(fam, tuple);
        if (!res.is_zero()) report.failures.push_back({n, tuple, res});
    }
    return report;
}

VectorField VectorField::zero(ChartPtr chart) {
    VectorField X;
    X.comp.assign(static_cast<size_t>(chart->size()), SuperPoly::zero(chart));
    X.chart = std::move(chart);
    return X;
}

bool VectorField::is_zero() const {
    for (const auto& c : comp)
        if (!c.is_zero()) return false;
    return true;
}

std::optional<Parity> VectorField::parity() const {
    std::optional<Parity> out;
    for (size_t i = 0; i < comp.size(); ++i) {
        if (comp[i].is_zero()) continue;
        auto p = comp[i].parity();
        if (!p) return std::nullopt;
        Parity q = (*p + chart->gen(static_cast<int>(i)).parity) % 2;
        if (out && *out != q) return std::nullopt;
        out = q;
    }
    return out ? out : std::optional<Parity>(0);
}

SuperPoly VectorField::apply(const SuperPoly& f) const {
    SuperPoly out(f.chart());
    for (size_t i = 0; i < comp.size(); ++i)
        if (!comp[i].is_zero())
            out = out + comp[i] * left_derivative(f, static_cast<int>(i));
    return out;
}

VectorField field_commutator(const VectorField& X, const VectorField& Y) {
    if (!X.chart->same_as(*Y.chart))
        throw Error("field_commutator: chart mismatch");
    auto px = X.parity();
    auto py = Y.parity();
    if (!px || !py) throw Error("field_commutator: inhomogeneous field");
    VectorField out = VectorField::zero(X.chart);
    for (size_t k = 0; k < out.comp.size(); ++k) {
        SuperPoly cross = Y.apply(X.comp[k]);
        if ((*px * *py) % 2) cross = -cross;
        out.comp[k] = X.apply(Y.comp[k]) - cross;
    }
    return out;
}

VectorField constant_field(const SuperPoly& u) {
    ChartPtr chart = u.chart();
    for (const auto& [m, c] : u.terms())
        if (monomial_degree(m) != 1)
            throw Error("constant_field: element is not linear in the coordinates");
    VectorField out = VectorField::zero(chart);
    for (int i = 0; i < chart->size(); ++i) {
        Scalar c = u.coefficient({{i, 1}});
        if (!c.is_zero()) out.comp[static_cast<size_t>(i)] = SuperPoly::constant(chart, c);
    }
    return out;
}

namespace {

SuperPoly field_at_zero(const VectorField& X) {
    SuperPoly out(X.chart);
    for (size_t k = 0; k < X.comp.size(); ++k) {
        Scalar c = X.comp[k].coefficient({});
        if (!c.is_zero())
            out = out + SuperPoly::generator(X.chart, static_cast<int>(k)) *
                            SuperPoly::constant(X.chart, c);
    }
    return out;
}

}  // namespace

SuperPoly brackets_from_q(const VectorField& Q, const std::vector<SuperPoly>& args) {
    VectorField acc = Q;
    for (const auto& u : args) acc = field_commutator(acc, constant_field(u));
    return field_at_zero(acc);
}

SuperPoly antisym_brackets_from_q(const VectorField& Q,
                                  const std::vector<SuperPoly>& args) {
    int k = static_cast<int>(args.size());
    std::vector<SuperPoly> iota;
    int eps = 0;
    int sum = 0;
    for (int j = 0; j < k; ++j) {
        auto p = args[static_cast<size_t>(j)].parity();
        if (!p) throw Error("antisym_brackets_from_q: inhomogeneous argument");
        int xt = (*p + 1) % 2;
        sum += xt;
        eps += xt * (k - j - 1);
        SuperPoly v = args[static_cast<size_t>(j)];
        if (xt % 2) v = -v;
        iota.push_back(std::move(v));
    }
    SuperPoly w = brackets_from_q(Q, iota);
    int lt = (sum + k) % 2;
    if ((eps + lt) % 2) w = -w;
    return w;
}

BracketFamily family_from_q(const VectorField& Q, int max_arity) {
    BracketFamily fam;
    fam.version = LVersion::Symmetric;
    for (int k = 0; k <= max_arity; ++k)
        fam.ops[k] = [Q](const std::vector<SuperPoly>& args) {
            return brackets_from_q(Q, args);
        };
    return fam;
}

VectorField q_field_from_family(const BracketFamily& fam, ChartPtr chart,
                                int max_arity) {
    if (fam.version != LVersion::Symmetric)
        throw Error("q_field_from_family: symmetric version required");
    VectorField Q = VectorField::zero(chart);
    int size = chart->size();
    for (const auto& [n, op] : fam.ops) {
        if (n > max_arity) continue;
        Rational norm(1);
        for (int j = 2; j <= n; ++j) norm *= j;
        std::vector<int> tuple(static_cast<size_t>(n), 0);
        while (true) {
            // Sign fixed so brackets_from_q inverts this construction:
            // (-1)^{n + sum_m j_m + sum_{m'<m} j_m j_{m'}} with j = gen parity.
            int phi = n;
            int seen_odd = 0;
            SuperPoly mono = SuperPoly::constant(chart, Scalar::one());
            std::vector<SuperPoly> basis;
            for (int m = 0; m < n; ++m) {
                int i = tuple[static_cast<size_t>(m)];
                int p = chart->gen(i).parity;
                phi += p * (1 + seen_odd);
                seen_odd += p;
                mono = mono * SuperPoly::generator(chart, i);
                basis.push_back(SuperPoly::generator(chart, i));
            }
            if (!mono.is_zero()) {
                SuperPoly r = op(basis);
                Scalar factor = Scalar::from_rational(
                    Rational(phi % 2 ? -1 : 1) / norm);
                for (int k = 0; k < size; ++k) {
                    Scalar c = r.coefficient({{k, 1}});
                    if (!c.is_zero())
                        Q.comp[static_cast<size_t>(k)] =
                            Q.comp[static_cast<size_t>(k)] +
                            mono * SuperPoly::constant(chart, c * factor);
                }
            }
            int m = n - 1;
            while (m >= 0 && tuple[static_cast<size_t>(m)] == size - 1) {
                tuple[static_cast<size_t>(m)] = 0;
                --m;
            }
            if (m < 0) break;
            ++tuple[static_cast<size_t>(m)];
        }
    }
    return Q;
}

namespace {

SuperPoly bracket_or_zero(const BracketFamily& fam, int k,
                          const std::vector<SuperPoly>& args, ChartPtr chart) {
    if (!fam.has(k)) return SuperPoly::zero(std::move(chart));
    return fam.apply(k, args);
}

}  // namespace

MorphismReport check_linfty_morphism(const MorphismData& md,
                                     const std::vector<std::vector<SuperPoly>>& corpus,
                                     int n_max) {
    if (n_max < 1 || n_max > 3)
        throw Error("check_linfty_morphism: only n_max in 1..3 supported");
    for (int k = 1; k <= n_max; ++k)
        if (!md.taylor.count(k))
            throw Error("check_linfty_morphism: missing Taylor component");
    auto phi = [&](int k, const std::vector<SuperPoly>& args) {
        return md.taylor.at(k)(args);
    };

    MorphismReport report;
    for (const auto& tuple : corpus) {
        int n = static_cast<int>(tuple.size());
        if (n < 1 || n > n_max) continue;
        for (const auto& u : tuple) {
            auto p = u.parity();
            if (!p || (*p + md.source.parity_shift) % 2 != 0)
                throw Error("check_linfty_morphism: corpus element is not even");
        }
        ChartPtr sc = tuple.front().chart();
        if (md.source.has(0) && !md.source.apply(0, {}).is_zero())
            throw Error("check_linfty_morphism: curved source");
        if (md.target.has(0) && !md.target.apply(0, {}).is_zero())
            throw Error("check_linfty_morphism: curved target");
        auto l = [&](int k, const std::vector<SuperPoly>& args) {
            return bracket_or_zero(md.source, k, args, sc);
        };
        ChartPtr tc = phi(1, {tuple.front()}).chart();
        auto lp = [&](int k, const std::vector<SuperPoly>& args) {
            return bracket_or_zero(md.target, k, args, tc);
        };
        ++report.checks;
        SuperPoly res(tc);
        if (n == 1) {
            const SuperPoly& u = tuple[0];
            res = phi(1, {l(1, {u})}) - lp(1, {phi(1, {u})});
        } else if (n == 2) {
            const SuperPoly &u1 = tuple[0], &u2 = tuple[1];
            res = phi(1, {l(2, {u1, u2})}) + phi(2, {l(1, {u1}), u2}) +
                  phi(2, {l(1, {u2}), u1}) - lp(1, {phi(2, {u1, u2})}) -
                  lp(2, {phi(1, {u1}), phi(1, {u2})});
        } else {
            const SuperPoly &u1 = tuple[0], &u2 = tuple[1], &u3 = tuple[2];
            res = phi(1, {l(3, {u1, u2, u3})}) + phi(2, {l(2, {u1, u2}), u3}) +
                  phi(2, {l(2, {u1, u3}), u2}) + phi(2, {l(2, {u2, u3}), u1}) +
                  phi(3, {l(1, {u1}), u2, u3}) + phi(3, {l(1, {u2}), u1, u3}) +
                  phi(3, {l(1, {u3}), u1, u2}) - lp(1, {phi(3, {u1, u2, u3})}) -
                  lp(2, {phi(1, {u1}), phi(2, {u2, u3})}) -
                  lp(2, {phi(1, {u2}), phi(2, {u1, u3})}) -
                  lp(2, {phi(1, {u3}), phi(2, {u1, u2})}) -
                  lp(3, {phi(1, {u1}), phi(1, {u2}), phi(1, {u3})});
        }
        if (!res.is_zero()) report.failures.push_back({n, tuple, res});
    }
    return report;
}

SuperPoly evaluate_at(const SuperPoly& f, const std::vector<Rational>& point) {
    ChartPtr chart = f.chart();
    if (static_cast<int>(point.size()) != chart->size())
        throw Error("evaluate_at: component count mismatch");
    std::map<int, SuperPoly> assignment;
    for (int i = 0; i < chart->size(); ++i) {
        if (chart->gen(i).parity % 2 && point[static_cast<size_t>(i)] != 0)
            throw Error("evaluate_at: nonzero component at odd generator '" +
                        chart->gen(i).name + "'");
        assignment.emplace(i, SuperPoly::constant(
                                  chart, Scalar::from_rational(
                                             point[static_cast<size_t>(i)])));
    }
    return substitute(f, assignment);
}

std::vector<SuperPoly> polarize_eval(const std::vector<SuperPoly>& f, int k,
                                     const std::vector<std::vector<Rational>>& args) {
    if (static_cast<int>(args.size()) != k)
        throw Error("polarize_eval: wrong argument count");
    if (k < 0 || k > 20) throw Error("polarize_eval: arity out of range");
    auto all = [](const Generator&) { return true; };
    std::vector<SuperPoly> out;
    for (const auto& comp : f) {
        ChartPtr chart = comp.chart();
        size_t dim = static_cast<size_t>(chart->size());
        for (const auto& a : args)
            if (a.size() != dim) throw Error("polarize_eval: vector size mismatch");
        SuperPoly g = comp.graded_part_in(all, k);
        SuperPoly total(chart);
        for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
            std::vector<Rational> point(dim, Rational(0));
            for (int j = 0; j < k; ++j)
                if (mask & (1ul << j))
                    for (size_t i = 0; i < dim; ++i)
                        point[i] += args[static_cast<size_t>(j)][i];
            SuperPoly val = evaluate_at(g, point);
            if ((k - __builtin_popcountl(mask)) % 2) val = -val;
            total = total + val;
        }
        out.push_back(std::move(total));
    }
    return out;
}

std::function<std::vector<SuperPoly>(const std::vector<std::vector<Rational>>&)>
polarize(std::vector<SuperPoly> f, int k) {
    return [f = std::move(f), k](const std::vector<std::vector<Rational>>& args) {
        return polarize_eval(f, k, args);
    };
}

}  // namespace superkoszul
