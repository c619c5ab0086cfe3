#include <fstream>

#include "doctest.h"
#include "dw/oracle.hpp"
#include "support.hpp"

using namespace dw;
using testing::corpus;
using testing::q;
using testing::share;
using testing::Z;

namespace {

const std::vector<std::string> kGlued = {"cylinder", "cylinder6", "two_disks", "slab"};

std::vector<FiniteAbelianGroup> groups() { return {Z(2), Z(3), Z(4), Z({2, 2})}; }

bool applicable(const Triangulation& m, int p, const FiniteAbelianGroup& g, const ActionSpec& s) {
  try {
    check_action_applicable(m, p, g, s);
    return true;
  } catch (const ActionError&) {
    return false;
  }
}

BordismMatrix cylinder_matrix(const std::string& name, const StateSpacePtr& space,
                              const ActionSpec& spec) {
  const auto b = corpus(name);
  return bordism_matrix(b, {"start|*", b->charts().at("start|*"), space},
                        {"end|*", b->charts().at("end|*"), space}, spec);
}

}  // namespace

TEST_CASE("field space examples") {
  CHECK(field_space(corpus("circle"), 1, Z(3)).classes.size() == 3);

  for (std::int64_t n : {2, 3, 5}) {
    const auto i = corpus("interval");
    const auto f = field_space(i, 1, Z(n), GammaCochain::zero(*i, 1, Z(n)));
    CHECK(f.classes.size() == static_cast<std::size_t>(n));
    CHECK(f.torsor_base.has_value());
  }

  const auto d = corpus("disk");
  auto rim = GammaCochain::zero(*d, 1, Z(3));
  const auto ab = *d->index_of({0, 1});
  rim.values[0][ab] = 1;  // one rim edge: a nonzero class on the circle
  CHECK(field_space(d, 1, Z(3), rim).classes.empty());
  const auto zero = field_space(d, 1, Z(3), GammaCochain::zero(*d, 1, Z(3)));
  CHECK(zero.classes.size() == 1);

  // the rim coboundary of a vertex function extends
  auto phi = GammaCochain::zero(*d, 0, Z(3));
  phi.values[0][0] = 2;
  const auto bnd = differential(*d, phi);
  auto restricted = GammaCochain::zero(*d, 1, Z(3));
  for (std::size_t e = 0; e < d->count(1); ++e) {
    if (d->boundary().contains(1, e)) restricted.values[0][e] = bnd.values[0][e];
  }
  const auto rel = make_complex(Pair::relative_to_boundary(d));
  const auto ext = extend_from_boundary(*rel, restricted);
  REQUIRE(ext);
  CHECK(differential(*d, *ext).is_zero());
  for (std::size_t e = 0; e < d->count(1); ++e) {
    if (d->boundary().contains(1, e)) CHECK(ext->values[0][e] == restricted.values[0][e]);
  }

  CHECK_THROWS_AS(field_space(corpus("torus3"), 1, Z(4), std::nullopt, 10),
                  EnumerationLimitExceeded);
}

TEST_CASE("partition function examples") {
  for (std::int64_t n : {2, 3, 4, 5}) {
    const auto t = ActionSpec::trivial();
    CHECK(partition_closed(corpus("circle"), 1, Z(n), t).value == PhaseSum::one());
    CHECK(partition_closed(corpus("sphere2"), 1, Z(n), t).value == PhaseSum::constant(q(1, n)));
    CHECK(partition_closed(corpus("torus2"), 1, Z(n), t).value == PhaseSum::constant(q(n)));
    CHECK(partition_closed(corpus("torus3"), 1, Z(n), t).value == PhaseSum::constant(q(n * n)));
  }
  CHECK(partition_closed(share(Triangulation()), 2, Z(3), ActionSpec::trivial()).value ==
        PhaseSum::one());
  CHECK_THROWS_AS(partition_closed(corpus("disk"), 1, Z(2), ActionSpec::trivial()),
                  TriangulationError);
  CHECK_THROWS_AS(partition_closed(corpus("rp2"), 1, Z(2), ActionSpec::cup_square(1)),
                  ActionError);
  CHECK_THROWS_AS(partition_closed(corpus("torus3"), 1, Z(4), ActionSpec::trivial(), 10),
                  EnumerationLimitExceeded);
}

TEST_CASE("untwisted closed formula and ordinary DW") {
  for (const auto* name : {"circle", "sphere2", "torus2", "torus7", "rp2", "torus3"}) {
    const auto m = corpus(name);
    for (int p = 1; p <= 2; ++p) {
      for (const auto& g : groups()) {
        const auto z = partition_closed(m, p, g, ActionSpec::trivial());
        CHECK(z.value.is_rational());
        const auto h = cohomology(Pair::absolute(m), p, g).order();
        CHECK(z.value.constant_term() == mu(m, p, g).mu * Rational(h));
      }
    }
  }
  // |Hom(pi_1, Gamma)| mu for abelian Gamma
  CHECK(partition_closed(corpus("rp2"), 1, Z(2), ActionSpec::trivial()).value ==
        PhaseSum::constant(q(1)));
  CHECK(partition_closed(corpus("rp2"), 1, Z(3), ActionSpec::trivial()).value ==
        PhaseSum::constant(q(1, 3)));
  CHECK(partition_closed(corpus("rp2"), 1, Z({2, 2}), ActionSpec::trivial()).value ==
        PhaseSum::constant(q(1)));
}

TEST_CASE("twisted values on S2 x S2") {
  const auto s = corpus("s2xs2");
  // n^2 gcd(2 lambda, n)
  const std::vector<std::tuple<std::int64_t, std::int64_t, long>> cases = {
      {2, 1, 8}, {3, 1, 9}, {3, 2, 9}, {4, 1, 32}, {4, 2, 64}, {5, 1, 25}};
  for (const auto& [n, lambda, expected] : cases) {
    const auto z = partition_closed(s, 2, Z(n), ActionSpec::cup_square(lambda));
    CHECK(phase_approx_eq(z.value, PhaseSum::constant(q(expected)), 1e-9));
    CHECK(z.classes == static_cast<std::size_t>(n * n));
  }
  CHECK(partition_closed(s, 2, Z(3), ActionSpec::trivial()).value == PhaseSum::constant(q(27)));
}

TEST_CASE("twisted torus agrees with the untwisted value") {
  for (std::int64_t n : {2, 3, 4}) {
    for (std::int64_t lambda = 0; lambda < n; ++lambda) {
      CHECK(partition_closed(corpus("torus2"), 1, Z(n), ActionSpec::cup_square(lambda)).value ==
            PhaseSum::constant(q(n)));
    }
  }
}

TEST_CASE("golden files from the exhaustive oracle") {
  const std::vector<std::string> files = {
      "torus2_p1_z2_cup1",  "torus2_p1_z3_cup1",  "torus2_p1_z4_cup1",  "torus7_p1_z2_cup1",
      "torus7_p1_z3_cup1",  "sphere2_p1_z2_cup1", "sphere2_p1_z3_cup1", "torus7_p2_z2_trivial",
      "circle_p1_z3_trivial", "rp2_p1_z2_trivial", "rp2_p1_z2x2_trivial"};
  for (const auto& f : files) {
    std::ifstream in(std::string(DW_CORPUS_DIR) + "/golden/" + f + ".json");
    REQUIRE(in);
    const auto j = nlohmann::json::parse(in);
    const auto m = corpus(j.at("complex").get<std::string>());
    const auto g = Z(j.at("coefficients").get<std::vector<std::int64_t>>());
    const auto spec = ActionSpec::from_json(j.at("action"));
    const auto expected = PhaseSum::from_json(j.at("oracle").at("value"));
    const auto z = partition_closed(m, j.at("p").get<int>(), g, spec);
    CHECK_MESSAGE(phase_approx_eq(z.value, expected, 1e-9), f);
    CHECK_MESSAGE(z.mu == Rational::parse(j.at("oracle").at("mu").get<std::string>()), f);
  }
}

TEST_CASE("oracle partition agrees on small closed manifolds") {
  for (const auto* name : {"circle", "sphere2", "torus7"}) {
    const auto m = corpus(name);
    for (std::int64_t n : {2, 3}) {
      for (const auto& spec : {ActionSpec::trivial(), ActionSpec::cup_square(1)}) {
        if (!applicable(*m, 1, Z(n), spec)) continue;
        const auto o = oracle::partition(*m, 1, Z(n), spec);
        CHECK(phase_approx_eq(o.value, partition_closed(m, 1, Z(n), spec).value, 1e-9));
      }
    }
  }
}

TEST_CASE("state spaces") {
  const auto s1 = state_space(corpus("circle"), 1, Z(2));
  CHECK(s1->dim() == 2);
  CHECK(s1->ip_scale == q(1, 2));
  CHECK(s1->basis[0].is_zero());

  const auto unit = state_space(share(Triangulation()), 1, Z(2));
  CHECK(unit->dim() == 1);
  CHECK(unit->is_unit());
  CHECK(unit->ip_scale == q(1));
  CHECK(unit_state_space(2, Z(3))->dim() == 1);

  const auto c = corpus("circle");
  const auto two = state_space(share(disjoint_union(*c, *c)), 1, Z(2));
  CHECK(two->dim() == 4);
  CHECK(two->ip_scale == q(1, 4));
  const auto j = s1->to_json();
  CHECK(j["dim"] == 2);
}

TEST_CASE("bordism matrix examples") {
  for (std::int64_t n : {2, 3, 4}) {
    const auto space = state_space(corpus("circle"), 1, Z(n));
    const auto x = cylinder_matrix("cylinder", space, ActionSpec::trivial());
    REQUIRE(x.entries.size() == static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < x.entries.size(); ++i) {
      for (std::size_t k = 0; k < x.entries[i].size(); ++k) {
        CHECK(x.entries[i][k] == (i == k ? PhaseSum::constant(q(n)) : PhaseSum::zero()));
      }
    }
    CHECK(trace_glue(x) == PhaseSum::constant(q(n)));
    CHECK(trace_glue(x) == partition_closed(corpus("torus2"), 1, Z(n), ActionSpec::trivial()).value);

    const auto disk = corpus("disk");
    const auto row = bordism_matrix(disk, {"", {}, unit_state_space(1, Z(n))},
                                    {"rim", {}, space}, ActionSpec::trivial());
    REQUIRE(row.entries.size() == 1);
    CHECK(row.entries[0][0] == PhaseSum::one());
    for (std::size_t k = 1; k < row.entries[0].size(); ++k) CHECK(row.entries[0][k].is_zero());
  }

  const auto unit = unit_state_space(1, Z(3));
  const auto empty = bordism_matrix(share(Triangulation()), {"", {}, unit}, {"", {}, unit},
                                    ActionSpec::trivial());
  REQUIRE(empty.entries.size() == 1);
  CHECK(empty.entries[0][0] == PhaseSum::one());
  CHECK(trace_glue(empty) == PhaseSum::one());

  const auto space = state_space(corpus("circle"), 1, Z(2));
  const auto cyl = corpus("cylinder");
  CHECK_THROWS_AS(bordism_matrix(cyl, {"start|*", cyl->charts().at("start|*"), space},
                                 {"", {}, unit_state_space(1, Z(2))}, ActionSpec::trivial()),
                  TriangulationError);
  CHECK_THROWS_AS(bordism_matrix(cyl, {"start|*", cyl->charts().at("start|*"), space},
                                 {"start|*", cyl->charts().at("start|*"), space},
                                 ActionSpec::trivial()),
                  TriangulationError);
}

TEST_CASE("trace examples") {
  BordismMatrix x;
  x.source = state_space(corpus("circle"), 1, Z(3));
  x.target = x.source;
  x.entries.assign(3, std::vector<PhaseSum>(3));
  CHECK(trace_glue(x).is_zero());
  for (int i = 0; i < 3; ++i) x.entries[i][i] = PhaseSum::one();
  CHECK(trace_glue(x) == PhaseSum::one());
}

TEST_CASE("composition of cylinders") {
  for (std::int64_t n : {2, 3, 4}) {
    for (const auto& spec : {ActionSpec::trivial(), ActionSpec::cup_square(1)}) {
      const auto space = state_space(corpus("circle"), 1, Z(n));
      const auto a = cylinder_matrix("cylinder", space, spec);
      const auto twice = compose_bordisms(a, a);
      const auto long_cyl = cylinder_matrix("cylinder6", space, spec);
      CHECK(matrices_approx_equal(twice, long_cyl, 1e-9));
      CHECK(phase_approx_eq(trace_glue(twice),
                            partition_closed(corpus("torus2"), 1, Z(n), spec).value, 1e-9));

      const auto unit = unit_state_space(1, Z(n));
      const auto disk = corpus("disk");
      const auto row = bordism_matrix(disk, {"", {}, unit}, {"rim", {}, space}, spec);
      const auto e = bordism_matrix(share(Triangulation()), {"", {}, unit}, {"", {}, unit}, spec);
      CHECK(matrices_approx_equal(compose_bordisms(e, row), row, 0));
      CHECK(matrices_approx_equal(compose_bordisms(row, a), row, 1e-9));
    }
  }
}

TEST_CASE("gluing examples") {
  const auto r = verify_gluing(corpus("cylinder"), 1, Z(2), ActionSpec::trivial(), 1e-9);
  CHECK(r.holds);
  CHECK(r.lhs == PhaseSum::constant(q(2)));
  CHECK(r.rhs == PhaseSum::constant(q(2)));
  CHECK(verify_gluing(corpus("cylinder"), 1, Z(2), ActionSpec::cup_square(1), 1e-9).holds);
  for (std::int64_t n : {2, 3, 4}) {
    const auto s = verify_gluing(corpus("two_disks"), 1, Z(n), ActionSpec::trivial(), 1e-9);
    CHECK(s.holds);
    CHECK(s.lhs == PhaseSum::constant(q(1, n)));
  }
  const auto j = r.to_json();
  for (const auto* key : {"mu_M", "mu_MN", "mu_N", "K_order", "lhs", "rhs", "holds"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("gluing identity over the corpus") {
  std::size_t checked = 0;
  for (const auto& name : kGlued) {
    const auto cut = corpus(name);
    for (int p = 1; p <= 2; ++p) {
      for (const auto& g : groups()) {
        for (const auto& spec : {ActionSpec::trivial(), ActionSpec::cup_square(1)}) {
          if (!applicable(*cut, p, g, spec)) continue;
          const auto r = verify_gluing(cut, p, g, spec, 1e-9);
          CHECK_MESSAGE(r.holds, name << " p=" << p << " " << g.to_string());
          CHECK(r.excision);
          CHECK(r.lemma1);
          CHECK(r.pullback_closed);
          if (spec.is_trivial()) CHECK(r.exact);
          ++checked;
        }
      }
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("dagger and monoidal structure") {
  for (const auto& [name, p] : std::vector<std::pair<std::string, int>>{
           {"torus2", 1}, {"sphere2", 1}, {"torus7", 1}, {"s2xs2", 2}}) {
    for (std::int64_t n : {2, 3, 4}) {
      for (const auto& spec : {ActionSpec::trivial(), ActionSpec::cup_square(1)}) {
        const auto d = dagger_check(corpus(name), p, Z(n), spec);
        CHECK(d.holds);
        CHECK(d.z_reversed == phase_conj(d.z));
      }
    }
  }
  const auto s2 = dagger_check(corpus("sphere2"), 1, Z(3), ActionSpec::cup_square(2));
  CHECK(s2.z == PhaseSum::constant(q(1, 3)));

  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"torus2", "sphere2"}, {"torus7", "torus2"}, {"circle", "circle"}, {"torus3", "torus3"}}) {
    for (const auto& g : groups()) {
      for (const auto& spec : {ActionSpec::trivial(), ActionSpec::cup_square(1)}) {
        if (!applicable(*corpus(a), 1, g, spec)) continue;
        const auto r = monoidal_check(corpus(a), corpus(b), 1, g, spec);
        CHECK(r.holds);
        CHECK(r.z_union == r.z_product);
      }
    }
  }
}

TEST_CASE("results are deterministic") {
  const auto s = corpus("s2xs2");
  const auto a = partition_closed(s, 2, Z(4), ActionSpec::cup_square(1)).to_json().dump();
  const auto b = partition_closed(s, 2, Z(4), ActionSpec::cup_square(1)).to_json().dump();
  CHECK(a == b);
  const auto g1 = verify_gluing(corpus("slab"), 1, Z(3), ActionSpec::trivial(), 1e-9).to_json();
  const auto g2 = verify_gluing(corpus("slab"), 1, Z(3), ActionSpec::trivial(), 1e-9).to_json();
  CHECK(g1.dump() == g2.dump());
}
