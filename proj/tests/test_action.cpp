#include "doctest.h"
#include "support.hpp"

using namespace dw;
using testing::corpus;
using testing::share;
using testing::Z;

namespace {

GammaCochain constant_one(const Triangulation& t, std::int64_t n) {
  auto c = GammaCochain::zero(t, 0, Z(n));
  for (auto& x : c.values[0]) x = 1;
  return c;
}

GammaCochain random_cocycle(testing::Gen& g, const CohomologyGroup& h) {
  std::vector<std::int64_t> coords;
  for (auto m : h.cyclic_orders()) coords.push_back(g.between(0, m - 1));
  auto c = h.representative(coords);
  if (h.degree() > 0) {
    const auto& t = h.complex()->space();
    c = c + differential(t, g.cochain(t, h.degree() - 1, h.coefficients()));
  }
  return c;
}

}  // namespace

TEST_CASE("cup product examples") {
  testing::Gen g(5);
  const auto t = corpus("torus2");
  const auto u = g.cochain(*t, 1, Z(4));
  CHECK(cup_product(*t, u, GammaCochain::zero(*t, 1, Z(4))).is_zero());
  CHECK(cup_product(*t, constant_one(*t, 4), u) == u);
  CHECK(cup_product(*t, u, constant_one(*t, 4)) == u);
  CHECK_THROWS_AS(cup_product(*t, u, g.cochain(*t, 1, Z(3))), ActionError);
  CHECK_THROWS_AS(cup_product(*t, g.cochain(*t, 1, Z({2, 2})), g.cochain(*t, 1, Z({2, 2}))),
                  ActionError);
}

TEST_CASE("leibniz rule on corpus complexes") {
  testing::Gen g(77);
  for (const auto* name : {"circle", "torus2", "rp2", "disk", "torus7", "cylinder", "ball",
                           "torus3", "s2xs2"}) {
    const auto t = corpus(name);
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t n = g.between(2, 6);
      const int p = static_cast<int>(g.between(0, t->dim()));
      const int q = static_cast<int>(g.between(0, t->dim() - p));
      const auto u = g.cochain(*t, p, Z(n));
      const auto v = g.cochain(*t, q, Z(n));
      const auto lhs = differential(*t, cup_product(*t, u, v));
      auto rhs = cup_product(*t, differential(*t, u), v);
      const auto second = cup_product(*t, u, differential(*t, v));
      rhs = p % 2 == 0 ? rhs + second : rhs - second;
      CHECK_MESSAGE(lhs == rhs, name << " p=" << p << " q=" << q << " n=" << n);
    }
  }
}

TEST_CASE("evaluate_action examples") {
  testing::Gen g(3);
  const auto t = corpus("torus2");
  const auto h = cohomology(Pair::absolute(t), 1, Z(2));
  for (const auto& c : enumerate_classes(h, 10)) {
    CHECK(evaluate_action(*t, c, ActionSpec::trivial()) == PhaseSum::one());
  }
  CHECK(evaluate_action(*t, GammaCochain::zero(*t, 1, Z(3)), ActionSpec::cup_square(1)) ==
        PhaseSum::one());
  // cup squares vanish on the torus: every cocycle pairs to 0
  for (std::int64_t n : {2, 3, 4}) {
    const auto hn = cohomology(Pair::absolute(t), 1, Z(n));
    for (int trial = 0; trial < 50; ++trial) {
      CHECK(cup_square_pairing(*t, random_cocycle(g, hn)) == 0);
    }
  }
  // on S2 x S2 the class a + b of the two sphere factors pairs to 2
  const auto s = corpus("s2xs2");
  const auto h2 = cohomology(Pair::absolute(s), 2, Z(5));
  REQUIRE(h2.cyclic_orders().size() == 2);
  const auto a = h2.representative({1, 0});
  const auto b = h2.representative({0, 1});
  CHECK(cup_square_pairing(*s, a) == 0);
  CHECK(cup_square_pairing(*s, b) == 0);
  const auto ab = cup_square_pairing(*s, a + b);
  CHECK((ab == 2 || ab == 3));
  CHECK(evaluate_action(*s, a + b, ActionSpec::cup_square(1)) == PhaseSum::root(5, ab));
  CHECK(evaluate_action(*s, a + b, ActionSpec::cup_square(6)) ==
        evaluate_action(*s, a + b, ActionSpec::cup_square(1)));
}

TEST_CASE("action preconditions") {
  const auto t = corpus("torus2");
  const auto spec = ActionSpec::cup_square(1);
  CHECK_NOTHROW(check_action_applicable(*t, 1, Z(3), spec));
  CHECK_THROWS_AS(check_action_applicable(*t, 2, Z(3), spec), ActionError);
  CHECK_THROWS_AS(check_action_applicable(*t, 1, Z({2, 2}), spec), ActionError);
  CHECK_THROWS_AS(check_action_applicable(*corpus("rp2"), 1, Z(2), spec), ActionError);
  CHECK_NOTHROW(check_action_applicable(*corpus("rp2"), 1, Z({2, 2}), ActionSpec::trivial()));
  CHECK_THROWS_AS(evaluate_action(*corpus("torus3"), GammaCochain::zero(*corpus("torus3"), 1, Z(2)),
                                  spec),
                  ActionError);
}

TEST_CASE("action spec json") {
  CHECK(ActionSpec::trivial().to_json().dump() == R"({"action":"trivial"})");
  CHECK(ActionSpec::cup_square(2).to_json().dump() == R"({"action":"cup_square","lambda":2})");
  const auto back = ActionSpec::from_json(nlohmann::json::parse(R"({"action":"cup_square","lambda":3})"));
  CHECK(back.kind == ActionSpec::Kind::CupSquare);
  CHECK(back.lambda == 3);
  CHECK(ActionSpec::from_json(nlohmann::json::parse(R"({"action":"trivial"})")).is_trivial());
  CHECK_THROWS(ActionSpec::from_json(nlohmann::json::parse(R"({"action":"bockstein"})")));
}

TEST_CASE("fundamental class of a closed manifold is a cycle") {
  for (const auto* name : {"circle", "sphere2", "torus2", "torus7", "torus3", "s2xs2"}) {
    const auto t = corpus(name);
    CHECK(FundamentalClass::of(*t).boundary(*t).empty());
    CHECK(FundamentalClass::of(*t).terms.size() == t->count(t->dim()));
  }
  const auto d = corpus("disk");
  CHECK(FundamentalClass::of(*d).boundary(*d).size() == 3);
  CHECK_THROWS_AS(FundamentalClass::of(*corpus("rp2")), ActionError);
  const auto flipped = corpus("torus2_flipped");
  CHECK_FALSE(FundamentalClass::of(*flipped).boundary(*flipped).empty());
}

TEST_CASE("orientation reversal conjugates the action") {
  testing::Gen g(19);
  for (const auto& [name, p] : std::vector<std::pair<std::string, int>>{{"torus2", 1}, {"s2xs2", 2}}) {
    const auto t = corpus(name);
    const auto rev = t->reversed();
    for (std::int64_t n : {2, 3, 4, 5}) {
      const auto h = cohomology(Pair::absolute(t), p, Z(n));
      for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_cocycle(g, h);
        const auto spec = ActionSpec::cup_square(g.between(0, n - 1));
        CHECK(evaluate_action(rev, c, spec) == phase_conj(evaluate_action(*t, c, spec)));
      }
    }
  }
}

TEST_CASE("gauge invariance") {
  const auto t = corpus("torus2");
  for (std::int64_t n = 2; n <= 4; ++n) {
    for (std::int64_t lambda = 0; lambda < n; ++lambda) {
      const auto r = check_gauge_invariance(*t, 1, Z(n), ActionSpec::cup_square(lambda), 100);
      CHECK(r.holds);
      CHECK(r.classes == static_cast<std::size_t>(n * n));
    }
  }
  CHECK(check_gauge_invariance(*t, 1, Z({2, 2}), ActionSpec::trivial(), 10).holds);
  const auto s = corpus("s2xs2");
  CHECK(check_gauge_invariance(*s, 2, Z(3), ActionSpec::cup_square(1), 10).holds);
}

TEST_CASE("gauge invariance fails for a corrupted fundamental class") {
  const auto flipped = corpus("torus2_flipped");
  for (std::int64_t n : {3, 4}) {
    const auto r = check_gauge_invariance(*flipped, 1, Z(n), ActionSpec::cup_square(1), 100);
    CHECK_FALSE(r.holds);
    CHECK(r.failing_class.has_value());
  }
  const auto t = corpus("torus2");
  for (std::size_t top : {0u, 5u, 17u}) {
    const auto bad = t->with_flipped_sign(top);
    CHECK_FALSE(check_gauge_invariance(bad, 1, Z(3), ActionSpec::cup_square(1), 100).holds);
  }
}
