#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace superkoszul {

using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Element of Q[i]: re + i*im with exact rational parts.
struct GaussRat {
    Rational re{0};
    Rational im{0};

    bool is_zero() const { return re == 0 && im == 0; }

    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }

    /// Multiply by i^k (k may be negative).
    GaussRat times_i_pow(long k) const;
};

/// Exact coefficient ring: finite Q[i]-combinations of hbar^h * t^e.
///
/// h may be negative (bounded in practice by nilpotence of whatever produced
/// it); e >= 0. Exponents above the truncation bounds are silently dropped,
/// everything below is exact.
class Scalar {
  public:
    using Key = std::pair<int, int>;  // (hbar exponent, t exponent)

    static constexpr int kDefaultHbarTrunc = 64;
    static constexpr int kDefaultTTrunc = 32;

    Scalar() = default;
    Scalar(int hbar_trunc, int t_trunc) : htrunc_(hbar_trunc), ttrunc_(t_trunc) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return from_rational(1); }
    static Scalar from_rational(Rational r);
    static Scalar from_gauss(GaussRat g, int hbar_pow = 0, int t_pow = 0);
    static Scalar imag_unit() { return from_gauss({0, 1}); }
    static Scalar hbar(int pow = 1) { return from_gauss({1, 0}, pow); }
    static Scalar t_marker(int pow = 1) { return from_gauss({1, 0}, 0, pow); }
    /// (-i*hbar)^n for any integer n.
    static Scalar neg_i_hbar_pow(long n);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, GaussRat>& terms() const { return terms_; }
    int hbar_truncation() const { return htrunc_; }
    int t_truncation() const { return ttrunc_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Lowest hbar exponent present (0 for the zero scalar).
    int min_hbar_degree() const;
    int max_hbar_degree() const;
    int max_t_degree() const;

    /// True if every term has hbar exponent >= n.
    bool divisible_by_hbar(int n) const { return is_zero() || min_hbar_degree() >= n; }

    /// Keep only the hbar^0 part (the classical limit); throws if negative
    /// hbar powers are present.
    Scalar mod_hbar() const;

    /// Substitute t = 1, folding all t powers together.
    Scalar fold_t() const;

    /// The purely rational value of a constant scalar; throws otherwise.
    GaussRat constant_value() const;

    std::string to_string() const;

  private:
    void insert(Key k, const GaussRat& v);

    std::map<Key, GaussRat> terms_;
    int htrunc_ = kDefaultHbarTrunc;
    int ttrunc_ = kDefaultTTrunc;
};

std::string to_string(const Rational& r);
std::string to_string(const GaussRat& g);

}  // namespace superkoszul
