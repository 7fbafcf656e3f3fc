#include "superkoszul/superpoly.hpp"

#include <sstream>

namespace superkoszul {

Parity monomial_parity(const Chart& chart, const Monomial& m) {
    int p = 0;
    for (const auto& [g, e] : m) p += chart.gen(g).parity * e;
    return p % 2;
}

int monomial_degree(const Monomial& m) {
    int d = 0;
    for (const auto& [g, e] : m) d += e;
    return d;
}

std::optional<std::pair<Monomial, int>> monomial_mul(const Chart& chart,
                                                     const Monomial& a,
                                                     const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    int sign = 1;
    size_t i = 0, j = 0;
    // Count of odd generators of `a` not yet consumed; each factor pulled
    // out of `b` must cross all of them.
    int odd_remaining_a = 0;
    for (const auto& [g, e] : a)
        if (chart.gen(g).parity == 1) ++odd_remaining_a;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
            if (chart.gen(a[i].first).parity == 1) --odd_remaining_a;
            out.push_back(a[i]);
            ++i;
        } else if (i >= a.size() || b[j].first < a[i].first) {
            if (chart.gen(b[j].first).parity == 1 && (odd_remaining_a % 2)) sign = -sign;
            out.push_back(b[j]);
            ++j;
        } else {  // same generator
            if (chart.gen(a[i].first).parity == 1) return std::nullopt;
            out.push_back({a[i].first, a[i].second + b[j].second});
            ++i;
            ++j;
        }
    }
    return std::make_pair(std::move(out), sign);
}

SuperPoly SuperPoly::constant(ChartPtr chart, Scalar c) {
    SuperPoly f(std::move(chart));
    f.add_term({}, std::move(c));
    return f;
}

SuperPoly SuperPoly::generator(ChartPtr chart, int gen_index) {
    SuperPoly f(std::move(chart));
    f.add_term({{gen_index, 1}}, Scalar::one());
    return f;
}

SuperPoly SuperPoly::generator(ChartPtr chart, const std::string& name) {
    int i = chart->index_of(name);
    return generator(std::move(chart), i);
}

std::optional<Parity> SuperPoly::parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
        Parity mp = monomial_parity(*chart_, m);
        if (!p)
            p = mp;
        else if (*p != mp)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(0);
}

SuperPoly SuperPoly::parity_part(Parity p) const {
    SuperPoly out(chart_);
    for (const auto& [m, c] : terms_)
        if (monomial_parity(*chart_, m) == p) out.terms_.emplace(m, c);
    return out;
}

void SuperPoly::check_chart(const SuperPoly& o) const {
    if (!chart_ || !o.chart_ || !chart_->same_as(*o.chart_))
        throw Error("SuperPoly: chart mismatch");
}

void SuperPoly::add_term(Monomial m, Scalar c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(c));
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SuperPoly SuperPoly::operator+(const SuperPoly& o) const {
    check_chart(o);
    SuperPoly r(chart_);
    r.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SuperPoly SuperPoly::operator-(const SuperPoly& o) const { return *this + (-o); }

SuperPoly SuperPoly::operator-() const {
    SuperPoly r(chart_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

SuperPoly SuperPoly::operator*(const SuperPoly& o) const {
    check_chart(o);
    SuperPoly r(chart_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            auto prod = monomial_mul(*chart_, ma, mb);
            if (!prod) continue;
            Scalar c = ca * cb;
            if (prod->second < 0) c = -c;
            r.add_term(prod->first, std::move(c));
        }
    return r;
}

SuperPoly SuperPoly::operator*(const Scalar& s) const {
    SuperPoly r(chart_);
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
}

bool SuperPoly::operator==(const SuperPoly& o) const {
    return terms_ == o.terms_;
}

Scalar SuperPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero() : it->second;
}

int SuperPoly::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
}

int SuperPoly::degree_in(const std::function<bool(const Generator&)>& pred) const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int md = 0;
        for (const auto& [g, e] : m)
            if (pred(chart_->gen(g))) md += e;
        d = std::max(d, md);
    }
    return d;
}

bool SuperPoly::depends_on(const std::function<bool(const Generator&)>& pred) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [g, e] : m)
            if (pred(chart_->gen(g))) return true;
    return false;
}

bool SuperPoly::depends_on_gen(int gen_index) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [g, e] : m)
            if (g == gen_index) return true;
    return false;
}

SuperPoly SuperPoly::graded_part_in(const std::function<bool(const Generator&)>& pred,
                                    int d) const {
    SuperPoly out(chart_);
    for (const auto& [m, c] : terms_) {
        int md = 0;
        for (const auto& [g, e] : m)
            if (pred(chart_->gen(g))) md += e;
        if (md == d) out.terms_.emplace(m, c);
    }
    return out;
}

SuperPoly SuperPoly::mod_hbar() const {
    SuperPoly out(chart_);
    for (const auto& [m, c] : terms_) out.add_term(m, c.mod_hbar());
    return out;
}

SuperPoly SuperPoly::fold_t() const {
    SuperPoly out(chart_);
    for (const auto& [m, c] : terms_) out.add_term(m, c.fold_t());
    return out;
}

bool SuperPoly::divisible_by_hbar(int n) const {
    for (const auto& [m, c] : terms_)
        if (!c.divisible_by_hbar(n)) return false;
    return true;
}

std::string SuperPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (const auto& [g, e] : m) {
            os << "*" << chart_->gen(g).name;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

SuperPoly left_derivative(const SuperPoly& f, int gen_index) {
    const Chart& chart = *f.chart();
    if (gen_index < 0 || gen_index >= chart.size())
        throw Error("left_derivative: generator index out of range");
    const bool odd = chart.gen(gen_index).parity == 1;
    SuperPoly out(f.chart());
    for (const auto& [m, c] : f.terms()) {
        int prefix_parity = 0;
        for (size_t k = 0; k < m.size(); ++k) {
            const auto& [g, e] = m[k];
            if (g < gen_index) {
                prefix_parity += chart.gen(g).parity * e;
                continue;
            }
            if (g > gen_index) break;
            Monomial dm;
            dm.reserve(m.size());
            for (size_t j = 0; j < m.size(); ++j) {
                if (j == k) {
                    if (e > 1) dm.push_back({g, e - 1});
                } else {
                    dm.push_back(m[j]);
                }
            }
            Scalar dc = c;
            if (odd) {
                if (prefix_parity % 2) dc = -dc;
            } else {
                dc = dc * Scalar::from_rational(e);
            }
            out.add_term(std::move(dm), std::move(dc));
            break;
        }
    }
    return out;
}

SuperPoly left_derivative(const SuperPoly& f, const std::string& name) {
    return left_derivative(f, f.chart()->index_of(name));
}

SuperPoly substitute(const SuperPoly& f, const std::map<int, SuperPoly>& assignment,
                     ChartPtr target) {
    const Chart& src = *f.chart();
    for (const auto& [g, v] : assignment) {
        auto vp = v.parity();
        if (!v.is_zero() && vp != std::optional<Parity>(src.gen(g).parity))
            throw Error("substitute: parity mismatch for generator '" +
                        src.gen(g).name + "'");
        if (!v.chart()->same_as(*target))
            throw Error("substitute: value for '" + src.gen(g).name +
                        "' is not on the target chart");
    }
    // Images of all generators appearing in f.
    std::map<int, SuperPoly> image;
    auto image_of = [&](int g) -> const SuperPoly& {
        auto it = image.find(g);
        if (it != image.end()) return it->second;
        auto ait = assignment.find(g);
        if (ait != assignment.end()) return image.emplace(g, ait->second).first->second;
        auto ti = target->try_index_of(src.gen(g).name);
        if (!ti)
            throw Error("substitute: generator '" + src.gen(g).name +
                        "' has no image in the target chart");
        return image.emplace(g, SuperPoly::generator(target, *ti)).first->second;
    };
    SuperPoly out(target);
    for (const auto& [m, c] : f.terms()) {
        SuperPoly term = SuperPoly::constant(target, c);
        for (const auto& [g, e] : m)
            for (int k = 0; k < e; ++k) term = term * image_of(g);
        out = out + term;
    }
    return out;
}

SuperPoly substitute(const SuperPoly& f, const std::map<int, SuperPoly>& assignment) {
    return substitute(f, assignment, f.chart());
}

SuperPoly berezin_integral(const SuperPoly& f, const std::vector<int>& odd_gens) {
    for (int g : odd_gens)
        if (f.chart()->gen(g).parity != 1)
            throw Error("berezin_integral: generator '" + f.chart()->gen(g).name +
                        "' is even");
    SuperPoly out = f;
    for (auto it = odd_gens.rbegin(); it != odd_gens.rend(); ++it)
        out = left_derivative(out, *it);
    return out;
}

SuperPoly exp_nilpotent(const SuperPoly& f) {
    const Chart& chart = *f.chart();
    int odd_count = 0;
    for (int i = 0; i < chart.size(); ++i)
        if (chart.gen(i).parity == 1) ++odd_count;
    int budget = odd_count + 2;
    for (const auto& [m, c] : f.terms()) {
        bool has_odd = false;
        for (const auto& [g, e] : m)
            if (chart.gen(g).parity == 1) has_odd = true;
        if (has_odd) continue;
        // Body term: only acceptable when every scalar term raises the hbar
        // or t degree, so that truncation terminates the series.
        for (const auto& [key, v] : c.terms())
            if (!(key.first >= 1 || (key.first >= 0 && key.second >= 1)))
                throw Error("exp_nilpotent: argument has a non-nilpotent body term");
        budget = std::max(budget,
                          odd_count + c.hbar_truncation() + c.t_truncation() + 2);
    }
    SuperPoly sum = SuperPoly::constant(f.chart(), Scalar::one());
    SuperPoly power = sum;
    Rational factorial = 1;
    for (int k = 1; k <= budget; ++k) {
        power = power * f;
        if (power.is_zero()) return sum;
        factorial *= k;
        sum = sum + power * Scalar::from_rational(Rational(1) / factorial);
    }
    if (!power.is_zero())
        throw Error("exp_nilpotent: series did not terminate within budget");
    return sum;
}

}  // namespace superkoszul
