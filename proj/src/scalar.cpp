#include "superkoszul/scalar.hpp"

#include <sstream>

namespace superkoszul {

GaussRat GaussRat::times_i_pow(long k) const {
    switch (((k % 4) + 4) % 4) {
        case 0: return *this;
        case 1: return {-im, re};
        case 2: return {-re, -im};
        default: return {im, -re};
    }
}

Scalar Scalar::from_rational(Rational r) {
    return from_gauss({std::move(r), 0});
}

Scalar Scalar::from_gauss(GaussRat g, int hbar_pow, int t_pow) {
    Scalar s;
    if (!g.is_zero()) s.insert({hbar_pow, t_pow}, g);
    return s;
}

Scalar Scalar::neg_i_hbar_pow(long n) {
    // (-i)^n = i^(-n) ... (-i)^1 = -i = i^3, so (-i)^n = i^(3n).
    Scalar s;
    GaussRat g = GaussRat{1, 0}.times_i_pow(3 * n);
    s.insert({static_cast<int>(n), 0}, g);
    return s;
}

void Scalar::insert(Key k, const GaussRat& v) {
    if (k.first > htrunc_ || k.second > ttrunc_) return;
    if (v.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, v);
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r(std::min(htrunc_, o.htrunc_), std::min(ttrunc_, o.ttrunc_));
    for (const auto& [k, v] : terms_) r.insert(k, v);
    for (const auto& [k, v] : o.terms_) r.insert(k, v);
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar r(htrunc_, ttrunc_);
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, -v);
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r(std::min(htrunc_, o.htrunc_), std::min(ttrunc_, o.ttrunc_));
    for (const auto& [ka, va] : terms_)
        for (const auto& [kb, vb] : o.terms_)
            r.insert({ka.first + kb.first, ka.second + kb.second}, va * vb);
    return r;
}

int Scalar::min_hbar_degree() const {
    if (terms_.empty()) return 0;
    int m = terms_.begin()->first.first;
    for (const auto& [k, v] : terms_) m = std::min(m, k.first);
    return m;
}

int Scalar::max_hbar_degree() const {
    int m = 0;
    for (const auto& [k, v] : terms_) m = std::max(m, k.first);
    return m;
}

int Scalar::max_t_degree() const {
    int m = 0;
    for (const auto& [k, v] : terms_) m = std::max(m, k.second);
    return m;
}

Scalar Scalar::mod_hbar() const {
    Scalar r(htrunc_, ttrunc_);
    for (const auto& [k, v] : terms_) {
        if (k.first < 0)
            throw Error("mod_hbar: negative hbar power present: " + to_string());
        if (k.first == 0) r.terms_.emplace(k, v);
    }
    return r;
}

Scalar Scalar::fold_t() const {
    Scalar r(htrunc_, ttrunc_);
    for (const auto& [k, v] : terms_) r.insert({k.first, 0}, v);
    return r;
}

GaussRat Scalar::constant_value() const {
    if (terms_.empty()) return {0, 0};
    if (terms_.size() != 1 || terms_.begin()->first != Key{0, 0})
        throw Error("constant_value: scalar is not constant: " + to_string());
    return terms_.begin()->second;
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const GaussRat& g) {
    if (g.im == 0) return to_string(g.re);
    std::string im = to_string(g.im) + "*i";
    if (g.re == 0) return im;
    return "(" + to_string(g.re) + (g.im > 0 ? "+" : "") + im + ")";
}

std::string Scalar::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << superkoszul::to_string(v);
        if (k.first != 0) os << "*hbar^" << k.first;
        if (k.second != 0) os << "*t^" << k.second;
    }
    return os.str();
}

}  // namespace superkoszul
