#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <cmath>

namespace holo {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (gcd reduced, denominator > 0). Throws on overflow instead of wrapping.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN)
      throw std::overflow_error("Rational: 64-bit overflow");
    return static_cast<std::int64_t>(p);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    std::int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    Rational r;
    r.num = checked_mul(a.num / g1, b.num / g2);
    r.den = checked_mul(a.den / g2, b.den / g1);
    return r;
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    std::int64_t g = std::gcd(a.den, b.den);
    r.num = checked_mul(a.num, b.den / g);
    std::int64_t t = checked_mul(b.num, a.den / g);
    if (__builtin_add_overflow(r.num, t, &r.num))
      throw std::overflow_error("Rational: 64-bit overflow");
    r.den = checked_mul(a.den, b.den / g);
    r.reduce();
    return r;
  }
  friend Rational operator-(const Rational& a) { Rational r(a); r.num = -r.num; return r; }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }

  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

/// One term  coeff * q^(exp12/12).  All exponents appearing in the tile
/// tables (1/4, 1/2, 1, 1/12, 1/6, 3/2, ...) and all half-integer volumes
/// are integers in units of 1/12, so exp12 arithmetic is exact.
///
/// Adding two monomials is only defined when the exponents agree; a sum
/// with mismatched exponents would silently leave the monomial ring, so
/// it throws instead.  Evaluate at a numeric q first if you need such sums.
struct QMonomial {
  Rational coeff;
  std::int64_t exp12 = 0;

  QMonomial() = default;
  QMonomial(Rational c, std::int64_t e) : coeff(c), exp12(e) {}
  static QMonomial one() { return QMonomial(Rational(1), 0); }
  static QMonomial zero() { return QMonomial(Rational(0), 0); }

  bool is_zero() const { return coeff.is_zero(); }

  friend QMonomial operator*(const QMonomial& a, const QMonomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return QMonomial(a.coeff * b.coeff, a.exp12 + b.exp12);
  }
  friend QMonomial operator+(const QMonomial& a, const QMonomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exp12 != b.exp12)
      throw std::domain_error("QMonomial: sum of unequal exponents (" +
                              std::to_string(a.exp12) + "/12 vs " +
                              std::to_string(b.exp12) + "/12)");
    return QMonomial(a.coeff + b.coeff, a.exp12);
  }
  friend bool operator==(const QMonomial& a, const QMonomial& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.coeff == b.coeff && a.exp12 == b.exp12;
  }
  friend bool operator!=(const QMonomial& a, const QMonomial& b) { return !(a == b); }

  double eval(double q) const {
    if (coeff.is_zero()) return 0.0;
    return coeff.to_double() * std::pow(q, static_cast<double>(exp12) / 12.0);
  }

  std::string str() const {
    if (coeff.is_zero()) return "0";
    std::string s = coeff.str();
    if (exp12 != 0) s += " q^(" + std::to_string(exp12) + "/12)";
    return s;
  }
};

}  // namespace holo
