#pragma once

#include <vector>

#include "dw/cohomology.hpp"

namespace dw {

struct MeasureFactor {
  int degree = 0;
  BigInt order;
  int exponent = 1;  // (-1)^(p - degree)
};

struct MeasureReport {
  Rational mu{1};
  std::vector<MeasureFactor> factors;

  nlohmann::ordered_json to_json() const;
};

/// Alternating product over H^i(X, A; Gamma), i = 0 .. p-1.
MeasureReport measure_of_pair(const Pair& pair, int p, const FiniteAbelianGroup& gamma);

/// mu_M, relative to the boundary of M.
MeasureReport mu(const TriangulationPtr& m, int p, const FiniteAbelianGroup& gamma);

/// mu_(M,N) over H^i(M, N u dM); N must not meet the boundary.
MeasureReport mu_rel(const TriangulationPtr& m, const Subcomplex& n, int p,
                     const FiniteAbelianGroup& gamma);

struct Lemma1Report {
  Rational mu_M;
  BigInt K_order;
  Rational mu_rel;
  Rational mu_N;
  bool holds = false;

  nlohmann::ordered_json to_json() const;
};

/// mu_M == |K| * mu_(M,N) * mu_N with K = ker(H^p(M, N u dM) -> H^p(M, dM)).
/// N is treated as a closed complex.
Lemma1Report verify_lemma1(const TriangulationPtr& m, const Subcomplex& n, int p,
                           const FiniteAbelianGroup& gamma);

}  // namespace dw
