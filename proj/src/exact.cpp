#include "dw/exact.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace dw {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  }
  if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1 / value_));
}

Rational Rational::power(const Rational& base, long exponent) {
  Rational b = exponent < 0 ? base.inverse() : base;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), b.value_.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), b.value_.get_den_mpz_t(), e);
  return Rational(num, den);
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

PhaseSum::PhaseSum(std::int64_t modulus, Terms terms) : modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("PhaseSum: modulus must be >= 1");
  for (auto& [e, c] : terms) {
    if (c.is_zero()) continue;
    terms_[mod_floor(e, modulus)] += c;
  }
  canonicalize();
}

PhaseSum PhaseSum::constant(const Rational& c) { return PhaseSum(1, {{0, c}}); }

PhaseSum PhaseSum::root(std::int64_t modulus, std::int64_t exponent,
                        const Rational& coeff) {
  return PhaseSum(modulus, {{exponent, coeff}});
}

void PhaseSum::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  if (terms_.empty()) {
    modulus_ = 1;
    return;
  }
  std::int64_t g = modulus_;
  for (const auto& [e, c] : terms_) g = std::gcd(g, e);
  if (g == 1) return;
  Terms reduced;
  for (auto& [e, c] : terms_) reduced.emplace(e / g, std::move(c));
  terms_ = std::move(reduced);
  modulus_ /= g;
}

PhaseSum PhaseSum::rescaled(std::int64_t modulus) const {
  PhaseSum out;
  out.modulus_ = modulus;
  const std::int64_t factor = modulus / modulus_;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e * factor, c);
  return out;
}

bool PhaseSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rational PhaseSum::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::complex<double> PhaseSum::evaluate() const {
  std::complex<double> sum = 0.0;
  const double turn = 2.0 * M_PI / static_cast<double>(modulus_);
  for (const auto& [e, c] : terms_) {
    sum += std::polar(c.to_double(), turn * static_cast<double>(e));
  }
  return sum;
}

nlohmann::ordered_json PhaseSum::to_json() const {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : terms_) terms.push_back({e, c.to_string()});
  nlohmann::ordered_json j;
  j["L"] = modulus_;
  j["terms"] = std::move(terms);
  return j;
}

PhaseSum PhaseSum::from_json(const nlohmann::json& j) {
  Terms terms;
  for (const auto& t : j.at("terms")) {
    terms[t.at(0).get<std::int64_t>()] +=
        Rational::parse(t.at(1).get<std::string>());
  }
  return PhaseSum(j.at("L").get<std::int64_t>(), std::move(terms));
}

PhaseSum phase_add(const PhaseSum& a, const PhaseSum& b) {
  const std::int64_t l = std::lcm(a.modulus_, b.modulus_);
  PhaseSum out = a.rescaled(l);
  const std::int64_t factor = l / b.modulus_;
  for (const auto& [e, c] : b.terms_) out.terms_[e * factor] += c;
  out.canonicalize();
  return out;
}

PhaseSum phase_mul(const PhaseSum& a, const PhaseSum& b) {
  const std::int64_t l = std::lcm(a.modulus_, b.modulus_);
  const std::int64_t fa = l / a.modulus_;
  const std::int64_t fb = l / b.modulus_;
  PhaseSum out;
  out.modulus_ = l;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.terms_[(ea * fa + eb * fb) % l] += ca * cb;
    }
  }
  out.canonicalize();
  return out;
}

PhaseSum phase_scale(const PhaseSum& a, const Rational& c) {
  PhaseSum::Terms terms;
  for (const auto& [e, coeff] : a.terms()) terms.emplace(e, coeff * c);
  return PhaseSum(a.modulus(), std::move(terms));
}

PhaseSum phase_conj(const PhaseSum& a) {
  PhaseSum::Terms terms;
  for (const auto& [e, c] : a.terms()) terms.emplace(-e, c);
  return PhaseSum(a.modulus(), std::move(terms));
}

std::complex<double> phase_eval(const PhaseSum& a) { return a.evaluate(); }

bool phase_approx_eq(const PhaseSum& a, const PhaseSum& b, double tol) {
  if (a == b) return true;
  return std::abs(a.evaluate() - b.evaluate()) <= tol;
}

std::ostream& operator<<(std::ostream& os, const PhaseSum& s) {
  return os << s.to_json().dump();
}

}  // namespace dw
