#include "doctest.h"
#include "support.hpp"

using namespace dw;
using testing::q;

TEST_CASE("rational parse and print") {
  CHECK(Rational::parse("6/4").to_string() == "3/2");
  CHECK(Rational::parse("-3").to_string() == "-3/1");
  CHECK(Rational::parse("2/-4") == q(-1, 2));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
  CHECK(Rational::power(q(2, 3), -2) == q(9, 4));
  CHECK(Rational::power(q(5), 0) == q(1));
}

TEST_CASE("rational round trip p/q * q/p") {
  testing::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const Rational r = g.rational();
    if (r.is_zero()) continue;
    CHECK(r * r.inverse() == q(1));
  }
}

TEST_CASE("phase_add examples") {
  const PhaseSum a(4, {{0, q(1)}});
  const PhaseSum b(4, {{2, q(1)}});
  const PhaseSum s = a + b;
  CHECK(s == PhaseSum(2, {{0, q(1)}, {1, q(1)}}));
  CHECK(std::abs(s.evaluate()) < 1e-12);
  CHECK(a + PhaseSum::zero() == a);
  // 1 + w_3 lives at L = 6 before reduction
  CHECK(PhaseSum(1, {{0, q(1)}}) + PhaseSum(3, {{1, q(1)}}) ==
        PhaseSum(6, {{0, q(1)}, {2, q(1)}}));
  CHECK((PhaseSum(1, {{0, q(1)}}) + PhaseSum(3, {{1, q(1)}})).modulus() == 3);
  CHECK((PhaseSum(2, {{1, q(1)}}) + PhaseSum(3, {{1, q(1)}})).modulus() == 6);
}

TEST_CASE("phase_mul examples") {
  CHECK(PhaseSum(4, {{1, q(1)}}) * PhaseSum(4, {{3, q(1)}}) == PhaseSum::one());
  const PhaseSum a(5, {{1, q(2)}, {3, q(-1, 7)}});
  CHECK(a * PhaseSum::one() == a);
  CHECK(PhaseSum(3, {{1, q(1, 2)}}) * PhaseSum(3, {{1, q(2)}}) == PhaseSum(3, {{2, q(1)}}));
}

TEST_CASE("phase_conj and eval") {
  CHECK(phase_conj(PhaseSum(4, {{1, q(1)}})) == PhaseSum(4, {{3, q(1)}}));
  const PhaseSum real(6, {{1, q(2)}, {5, q(2)}, {0, q(1)}});
  CHECK(phase_conj(real) == real);
  CHECK(phase_eval(PhaseSum::constant(q(3, 2))) == std::complex<double>(1.5, 0));
  const auto i = phase_eval(PhaseSum(4, {{1, q(1)}}));
  CHECK(std::abs(i - std::complex<double>(0, 1)) < 1e-15);
  CHECK(std::abs(phase_eval(PhaseSum(3, {{0, q(1)}, {1, q(1)}, {2, q(1)}}))) < 1e-12);
}

TEST_CASE("phase_approx_eq") {
  const PhaseSum a(7, {{2, q(1, 3)}});
  CHECK(phase_approx_eq(a, a, 0));
  CHECK(phase_approx_eq(PhaseSum(2, {{0, q(1)}, {1, q(1)}}), PhaseSum::zero(), 1e-9));
  CHECK_FALSE(phase_approx_eq(PhaseSum::constant(q(1)), PhaseSum::constant(q(2)), 1e-9));
}

TEST_CASE("canonical form") {
  const PhaseSum s(12, {{4, q(1)}, {8, q(2)}, {0, q(0)}});
  CHECK(s.modulus() == 3);
  CHECK(s.terms().size() == 2);
  CHECK((PhaseSum(8, {{3, q(1)}}) + PhaseSum(8, {{3, q(-1)}})).is_zero());
  CHECK(PhaseSum(8, {}).modulus() == 1);
  CHECK(PhaseSum(5, {{-1, q(1)}}) == PhaseSum(5, {{4, q(1)}}));
}

TEST_CASE("json round trip") {
  const PhaseSum s(6, {{1, q(-2, 3)}, {4, q(5)}});
  CHECK(s.to_json().dump() == R"({"L":6,"terms":[[1,"-2/3"],[4,"5/1"]]})");
  CHECK(PhaseSum::from_json(nlohmann::json::parse(s.to_json().dump())) == s);
}

TEST_CASE("phase algebra properties on random sums") {
  testing::Gen g(2024);
  for (int i = 0; i < 300; ++i) {
    const PhaseSum a = g.phase_sum(), b = g.phase_sum(), c = g.phase_sum();
    CHECK(std::abs(phase_eval(a + b) - (phase_eval(a) + phase_eval(b))) <= 1e-12);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(phase_conj(phase_conj(a)) == a);
    CHECK(std::abs(phase_eval(phase_conj(a)) - std::conj(phase_eval(a))) <= 1e-12);
  }
}

TEST_CASE("large additions stay exact") {
  testing::Gen g(5);
  PhaseSum sum;
  std::complex<double> expected = 0;
  for (int i = 0; i < 64; ++i) {
    const PhaseSum t = PhaseSum::root(g.between(1, 9), g.between(0, 8), g.rational());
    sum += t;
    expected += phase_eval(t);
  }
  CHECK(std::abs(phase_eval(sum) - expected) <= 1e-12);
}
