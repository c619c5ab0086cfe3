#pragma once

#include <random>
#include <string>

#include "dw/tqft.hpp"

namespace testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(DW_CORPUS_DIR) + "/" + name + ".json";
}

inline dw::TriangulationPtr corpus(const std::string& name) {
  return std::make_shared<const dw::Triangulation>(dw::load_triangulation(corpus_path(name)));
}

inline dw::TriangulationPtr share(dw::Triangulation t) {
  return std::make_shared<const dw::Triangulation>(std::move(t));
}

inline dw::FiniteAbelianGroup Z(std::int64_t n) { return dw::FiniteAbelianGroup::cyclic(n); }
inline dw::FiniteAbelianGroup Z(std::vector<std::int64_t> ns) {
  return dw::FiniteAbelianGroup::from_cyclic(ns);
}

inline dw::Rational q(long num, long den = 1) { return dw::Rational(num) / dw::Rational(den); }

/// Small deterministic generators for property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }

  dw::Rational rational() {
    long den = static_cast<long>(between(1, 9));
    return q(static_cast<long>(between(-9, 9)), den);
  }

  dw::PhaseSum phase_sum(std::size_t max_terms = 6) {
    const std::int64_t l = between(1, 12);
    dw::PhaseSum::Terms terms;
    const auto count = between(0, static_cast<std::int64_t>(max_terms));
    for (std::int64_t i = 0; i < count; ++i) terms[between(0, l - 1)] += rational();
    return dw::PhaseSum(l, terms);
  }

  dw::IntMatrix matrix(std::size_t rows, std::size_t cols, long bound) {
    dw::IntMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (between(0, 2) == 0) continue;  // keep some sparsity
        a.set(r, c, static_cast<long>(between(-bound, bound)));
      }
    }
    return a;
  }

  dw::GammaCochain cochain(const dw::Triangulation& t, int k, const dw::FiniteAbelianGroup& g) {
    auto c = dw::GammaCochain::zero(t, k, g);
    for (std::size_t j = 0; j < c.moduli.size(); ++j) {
      for (auto& x : c.values[j]) x = between(0, c.moduli[j] - 1);
    }
    return c;
  }
};

}  // namespace testing
