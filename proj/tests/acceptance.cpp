// Acceptance run: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

#include "dw/cli.hpp"
#include "dw/oracle.hpp"
#include "support.hpp"

using namespace dw;
using testing::corpus;
using testing::corpus_path;
using testing::q;
using testing::share;
using testing::Z;

namespace {

constexpr double kTol = 1e-9;
constexpr std::size_t kGaugeTrials = 100;
constexpr std::size_t kMaxOracleSimplices = 30;

struct Outcome {
  bool ok = true;
  std::size_t checks = 0;
  std::string note;

  void expect(bool condition, const std::string& what) {
    ++checks;
    if (!condition && ok) {
      ok = false;
      note = what;
    }
  }
};

bool applicable(const Triangulation& m, int p, const FiniteAbelianGroup& g, const ActionSpec& s) {
  try {
    check_action_applicable(m, p, g, s);
    return true;
  } catch (const ActionError&) {
    return false;
  }
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(DW_CORPUS_DIR)) {
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::string label(const FiniteAbelianGroup& g) { return g.to_string(); }

std::vector<FiniteAbelianGroup> four_groups() { return {Z(2), Z(3), Z(4), Z({2, 2})}; }

const std::vector<std::string> kClosedOriented = {"circle", "sphere2", "torus2", "torus7", "torus3",
                                                  "s2xs2"};

// 1 ------------------------------------------------------------------------
Outcome oracle_equivalence() {
  Outcome o;
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    std::vector<Pair> pairs{Pair::absolute(t)};
    if (!t->is_closed()) pairs.push_back(Pair::relative_to_boundary(t));
    for (const auto& pair : pairs) {
      for (int k = 0; k <= t->dim(); ++k) {
        std::size_t relevant = 0;
        for (int j = k - 1; j <= k + 1; ++j) relevant += free_simplices(pair, j).size();
        if (relevant > kMaxOracleSimplices) continue;
        for (const auto& g : {Z(2), Z(3), Z({2, 2})}) {
          const auto r = oracle::check_cohomology(pair, k, g);
          o.expect(r.orders_match && r.partition_matches,
                   name + " H^" + std::to_string(k) + " " + label(g));
        }
      }
    }
  }
  return o;
}

// 2 ------------------------------------------------------------------------
Outcome lemma1() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"torus2", "pt|*"},  {"torus2", "pts|*"},   {"torus2", "*|pt"},    {"sphere2", "equator"},
      {"sphere2", "pole"}, {"torus7", "loop"},    {"circle", "pt"},      {"rp2", "triangle"},
      {"torus3", "pt|*|*"}, {"s2xs2", "equator|*"}};
  for (const auto& [m, n] : pairs) {
    const auto t = corpus(m);
    for (int p = 1; p <= 2; ++p) {
      for (const auto& g : four_groups()) {
        o.expect(verify_lemma1(t, t->subcomplex(n), p, g).holds,
                 m + " N=" + n + " p=" + std::to_string(p) + " " + label(g));
      }
    }
  }
  return o;
}

// 3 ------------------------------------------------------------------------
Outcome gluing() {
  Outcome o;
  for (const auto* name : {"cylinder", "two_disks", "slab"}) {
    const auto cut = corpus(name);
    for (int p = 1; p <= 2; ++p) {
      for (const auto& g : four_groups()) {
        for (const auto& spec : {ActionSpec::trivial(), ActionSpec::cup_square(1)}) {
          if (!applicable(*cut, p, g, spec)) continue;
          const auto r = verify_gluing(cut, p, g, spec, kTol);
          const bool pass = spec.is_trivial() ? r.exact : phase_approx_eq(r.lhs, r.rhs, kTol);
          o.expect(pass, std::string(name) + " p=" + std::to_string(p) + " " + label(g) + " " +
                             spec.to_json().dump());
        }
      }
    }
  }
  return o;
}

// 4 ------------------------------------------------------------------------
Outcome excision() {
  Outcome o;
  for (const auto& name : corpus_names()) {
    const auto cut = corpus(name);
    if (!cut->gluing()) continue;
    for (int p = 1; p <= 2; ++p) {
      for (const auto& g : four_groups()) {
        const auto r = verify_gluing(cut, p, g, ActionSpec::trivial(), kTol);
        o.expect(r.excision, name + " p=" + std::to_string(p) + " " + label(g));
      }
    }
  }
  return o;
}

// 5 ------------------------------------------------------------------------
Outcome golden_values() {
  Outcome o;
  auto both_paths = [&](const std::string& name, int p, const FiniteAbelianGroup& g,
                        const Rational& expected) {
    const auto m = corpus(name);
    const auto direct = partition_closed(m, p, g, ActionSpec::trivial()).value;
    const Rational counted = mu(m, p, g).mu * Rational(cohomology(Pair::absolute(m), p, g).order());
    o.expect(direct == PhaseSum::constant(expected) && counted == expected,
             name + " p=" + std::to_string(p) + " " + label(g));
  };
  for (long n : {2, 3, 4}) {
    both_paths("circle", 1, Z(n), q(1));
    both_paths("sphere2", 1, Z(n), q(1, n));
    both_paths("torus2", 1, Z(n), q(n));
    both_paths("torus3", 1, Z(n), q(n * n));
  }
  both_paths("torus2", 2, Z(2), q(1));
  return o;
}

// 6 ------------------------------------------------------------------------
Outcome gauge() {
  Outcome o;
  const std::vector<std::pair<std::string, int>> manifolds = {{"torus2", 1}, {"torus7", 1},
                                                              {"s2xs2", 2}};
  for (const auto& [name, p] : manifolds) {
    const auto m = corpus(name);
    for (std::int64_t n : {2, 3, 4}) {
      for (std::int64_t lambda = 1; lambda < n; ++lambda) {
        const auto r = check_gauge_invariance(*m, p, Z(n), ActionSpec::cup_square(lambda),
                                              kGaugeTrials);
        o.expect(r.holds, name + " Z" + std::to_string(n) + " lambda=" + std::to_string(lambda));
      }
    }
  }
  const auto flipped = corpus("torus2_flipped");
  const auto control = check_gauge_invariance(*flipped, 1, Z(3), ActionSpec::cup_square(1),
                                              kGaugeTrials);
  o.expect(!control.holds, "negative control passed");
  return o;
}

// 7 ------------------------------------------------------------------------
Outcome dagger_monoidal() {
  Outcome o;
  for (const auto& name : kClosedOriented) {
    const auto m = corpus(name);
    for (int p = 1; p <= 2; ++p) {
      for (const auto& g : four_groups()) {
        for (const auto& spec : {ActionSpec::trivial(), ActionSpec::cup_square(1)}) {
          if (!applicable(*m, p, g, spec)) continue;
          const std::string what = name + " p=" + std::to_string(p) + " " + label(g);
          o.expect(dagger_check(m, p, g, spec).holds, "dagger " + what);
          o.expect(monoidal_check(m, m, p, g, spec).holds, "monoidal " + what);
        }
      }
    }
  }
  const auto rp2 = corpus("rp2");
  for (const auto& other : {"sphere2", "torus2"}) {
    for (const auto& g : four_groups()) {
      o.expect(monoidal_check(rp2, corpus(other), 1, g, ActionSpec::trivial()).holds,
               std::string("monoidal rp2 + ") + other);
    }
  }
  return o;
}

// 8 ------------------------------------------------------------------------
Outcome determinism() {
  Outcome o;
  std::vector<std::string> args = {"verify",         corpus_path("cylinder"), corpus_path("two_disks"),
                                   corpus_path("torus2"), corpus_path("s2xs2"), "--p", "1,2",
                                   "--gamma",        "2",  "--gamma", "3", "--gamma", "2,2",
                                   "--action",       "trivial", "--action", "cup_square"};
  std::string first, second;
  for (auto* target : {&first, &second}) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    o.expect(code == cli::kOk, "verify exit code " + std::to_string(code));
    *target = out.str();
  }
  o.expect(!first.empty() && first == second, "reports differ");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double seconds_limit;  // <= 0: untimed
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "cohomology oracle equivalence", 10, oracle_equivalence},
      {2, "measure factorization exact", 30, lemma1},
      {3, "gluing identity", 120, gluing},
      {4, "excision", 0, excision},
      {5, "closed manifold values", 0, golden_values},
      {6, "gauge invariance and negative control", 60, gauge},
      {7, "dagger and monoidal", 30, dagger_monoidal},
      {8, "determinism of verify", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = o.ok;
    std::string note = o.note;
    if (c.seconds_limit > 0 && secs > c.seconds_limit) {
      ok = false;
      if (note.empty()) note = "time limit exceeded";
    }
    if (o.checks == 0 && ok) {
      ok = false;
      note = "no checks ran";
    }
    std::printf("%s %d %-40s %5zu checks %8.2f s", ok ? "PASS" : "FAIL", c.id, c.title, o.checks,
                secs);
    if (c.seconds_limit > 0) std::printf(" (limit %.0f s)", c.seconds_limit);
    if (!note.empty()) std::printf("  [%s]", note.c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
