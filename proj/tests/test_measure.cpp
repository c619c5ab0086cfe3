#include "doctest.h"
#include "support.hpp"

using namespace dw;
using testing::corpus;
using testing::q;
using testing::share;
using testing::Z;

namespace {

const std::vector<std::string> kSmall = {"point",   "interval", "circle",    "sphere2", "torus2",
                                         "torus7",  "rp2",      "disk",      "ball",    "cylinder",
                                         "two_disks", "torus3", "interval3", "slab"};

std::vector<FiniteAbelianGroup> groups() { return {Z(2), Z(3), Z(4), Z({2, 2})}; }

}  // namespace

TEST_CASE("mu examples") {
  CHECK(mu(corpus("circle"), 1, Z(2)).mu == q(1, 2));
  CHECK(mu(corpus("torus2"), 0, Z(5)).mu == q(1));
  CHECK(mu(corpus("torus2"), 0, Z(5)).factors.empty());
  CHECK(mu(corpus("torus2"), 2, Z(2)).mu == q(1, 2));
  CHECK(mu(corpus("sphere2"), 1, Z(7)).mu == q(1, 7));
  CHECK(mu(corpus("disk"), 1, Z(3)).mu == q(1));
  CHECK(mu(corpus("torus3"), 2, Z(3)).mu == q(1, 9));

  const auto r = mu(corpus("torus2"), 2, Z(2));
  REQUIRE(r.factors.size() == 2);
  CHECK(r.factors[0].degree == 0);
  CHECK(r.factors[0].order == 2);
  CHECK(r.factors[0].exponent == 1);
  CHECK(r.factors[1].order == 4);
  CHECK(r.factors[1].exponent == -1);
  const auto j = r.to_json();
  CHECK(j["mu"] == "1/2");
}

TEST_CASE("report equals the product of its factors") {
  for (const auto& name : kSmall) {
    const auto t = corpus(name);
    for (int p = 0; p <= 3; ++p) {
      for (const auto& g : groups()) {
        const auto r = mu(t, p, g);
        Rational product(1);
        for (const auto& f : r.factors) {
          product *= Rational::power(Rational(f.order), f.exponent);
          CHECK(f.exponent == ((p - f.degree) % 2 == 0 ? 1 : -1));
        }
        CHECK(product == r.mu);
      }
    }
  }
}

TEST_CASE("mu_rel examples") {
  const auto t = corpus("torus2");
  CHECK(mu_rel(t, Subcomplex(*t), 1, Z(2)).mu == mu(t, 1, Z(2)).mu);
  CHECK(mu_rel(t, t->subcomplex("pt|*"), 1, Z(2)).mu == q(1));
  CHECK(mu_rel(t, t->subcomplex("pts|*"), 1, Z(3)).mu == q(1));
  const auto cyl = corpus("cylinder");
  CHECK_THROWS_AS(mu_rel(cyl, cyl->subcomplex("start|*"), 1, Z(2)), TriangulationError);
}

TEST_CASE("multiplicativity under disjoint union") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"circle", "circle"},   {"circle", "interval"}, {"sphere2", "torus7"}, {"torus2", "cylinder"},
      {"disk", "sphere2"},    {"rp2", "torus2"},      {"torus3", "slab"}};
  for (const auto& [a, b] : cases) {
    {
      const auto ta = corpus(a);
      const auto tb = corpus(b);
      const auto u = share(disjoint_union(*ta, *tb));
      for (int p = 1; p <= 2; ++p) {
        for (const auto& g : groups()) {
          CHECK(mu(u, p, g).mu == mu(ta, p, g).mu * mu(tb, p, g).mu);
          for (const auto& [sname, sub] : ta->subcomplexes()) {
            if (sub.intersects(ta->boundary())) continue;
            CHECK(mu_rel(u, u->subcomplex("1." + sname), p, g).mu ==
                  mu_rel(ta, sub, p, g).mu * mu(tb, p, g).mu);
          }
        }
      }
    }
  }
}

TEST_CASE("measure factorization examples") {
  const auto t = corpus("torus2");
  CHECK(verify_lemma1(t, t->subcomplex("pt|*"), 1, Z(2)).holds);
  const auto empty = verify_lemma1(t, Subcomplex(*t), 1, Z(3));
  CHECK(empty.holds);
  CHECK(empty.K_order == 1);
  CHECK(empty.mu_N == q(1));
  const auto t3 = corpus("torus3");
  const auto r = verify_lemma1(t3, t3->subcomplex("pt|*|*"), 2, Z({2, 2}));
  CHECK(r.holds);
  CHECK(r.mu_M == r.mu_rel * r.mu_N * Rational(r.K_order));
}

TEST_CASE("measure factorization on every corpus subcomplex") {
  std::size_t checked = 0;
  for (const auto& name : kSmall) {
    const auto t = corpus(name);
    for (const auto& [sname, sub] : t->subcomplexes()) {
      if (sub.intersects(t->boundary())) continue;
      for (int p = 1; p <= 3; ++p) {
        for (const auto& g : groups()) {
          const auto r = verify_lemma1(t, sub, p, g);
          CHECK_MESSAGE(r.holds, name << " N=" << sname << " p=" << p << " " << g.to_string());
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("excision against the cut manifold") {
  for (const auto& name : {"cylinder", "two_disks", "cylinder6"}) {
    for (const auto& g : groups()) {
      for (int p = 1; p <= 2; ++p) {
        const auto r = verify_gluing(corpus(name), p, g, ActionSpec::trivial(), 1e-9);
        CHECK(r.excision);
        CHECK(r.lemma1);
      }
    }
  }
}

TEST_CASE("p = 1 measure is the inverse automorphism count") {
  for (const auto& name : kSmall) {
    const auto t = corpus(name);
    for (const auto& g : groups()) {
      const auto h0 = cohomology(Pair::relative_to_boundary(t), 0, g).order();
      CHECK(mu(t, 1, g).mu == Rational(1) / Rational(h0));
    }
  }
}
