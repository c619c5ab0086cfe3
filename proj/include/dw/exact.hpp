#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace dw {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}
  Rational(const BigInt& value) : value_(value) {}
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "n", "n/d" or "-n/d".
  static Rational parse(const std::string& text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }

  /// Always "num/den", e.g. "1/1", "-3/4".
  std::string to_string() const;

  Rational inverse() const;
  /// base^exponent for a possibly negative exponent; base must be nonzero
  /// when exponent < 0.
  static Rational power(const Rational& base, long exponent);

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.value_ < b.value_;
  }

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact element of the group ring Q[mu_L]: sum of coeff(e) * exp(2 pi i e / L).
///
/// Kept in canonical form: the modulus is the smallest L for which every
/// stored exponent stays integral, exponents lie in [0, L), and zero
/// coefficients are never stored. Two PhaseSums compare equal iff their
/// canonical forms agree; this is a sufficient (not necessary) test for
/// numerical equality since cyclotomic relations are not reduced.
class PhaseSum {
 public:
  using Terms = std::map<std::int64_t, Rational>;

  PhaseSum() = default;
  PhaseSum(std::int64_t modulus, Terms terms);

  static PhaseSum zero() { return PhaseSum(); }
  static PhaseSum one() { return constant(Rational(1)); }
  static PhaseSum constant(const Rational& c);
  /// coeff * exp(2 pi i exponent / modulus).
  static PhaseSum root(std::int64_t modulus, std::int64_t exponent,
                       const Rational& coeff = Rational(1));

  std::int64_t modulus() const { return modulus_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the value is a single rational term at exponent 0.
  bool is_rational() const;
  /// Coefficient of exponent 0 (the value itself when is_rational()).
  Rational constant_term() const;

  std::complex<double> evaluate() const;

  nlohmann::ordered_json to_json() const;
  static PhaseSum from_json(const nlohmann::json& j);

  friend bool operator==(const PhaseSum& a, const PhaseSum& b) {
    return a.modulus_ == b.modulus_ && a.terms_ == b.terms_;
  }

 private:
  void canonicalize();
  PhaseSum rescaled(std::int64_t modulus) const;

  friend PhaseSum phase_add(const PhaseSum& a, const PhaseSum& b);
  friend PhaseSum phase_mul(const PhaseSum& a, const PhaseSum& b);

  std::int64_t modulus_ = 1;
  Terms terms_;
};

PhaseSum phase_add(const PhaseSum& a, const PhaseSum& b);
PhaseSum phase_mul(const PhaseSum& a, const PhaseSum& b);
PhaseSum phase_scale(const PhaseSum& a, const Rational& c);
PhaseSum phase_conj(const PhaseSum& a);
std::complex<double> phase_eval(const PhaseSum& a);
bool phase_approx_eq(const PhaseSum& a, const PhaseSum& b, double tol);

inline PhaseSum operator+(const PhaseSum& a, const PhaseSum& b) {
  return phase_add(a, b);
}
inline PhaseSum operator*(const PhaseSum& a, const PhaseSum& b) {
  return phase_mul(a, b);
}
inline PhaseSum& operator+=(PhaseSum& a, const PhaseSum& b) {
  return a = phase_add(a, b);
}

std::ostream& operator<<(std::ostream& os, const PhaseSum& s);

}  // namespace dw
