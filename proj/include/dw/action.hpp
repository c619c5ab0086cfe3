#pragma once

#include <cstdint>
#include <vector>

#include "dw/cohomology.hpp"

namespace dw {

/// Trivial action, or exp(2 pi i lambda <P u P, [M]> / n) for Gamma = Z_n, dim M = 2p.
struct ActionSpec {
  enum class Kind { Trivial, CupSquare };
  Kind kind = Kind::Trivial;
  std::int64_t lambda = 0;

  static ActionSpec trivial() { return {}; }
  static ActionSpec cup_square(std::int64_t lambda) { return {Kind::CupSquare, lambda}; }

  bool is_trivial() const { return kind == Kind::Trivial; }
  nlohmann::ordered_json to_json() const;
  static ActionSpec from_json(const nlohmann::json& j);
};

class ActionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Signed top simplices of an oriented complex.
struct FundamentalClass {
  std::vector<std::pair<std::size_t, int>> terms;  // (top simplex, sign)

  static FundamentalClass of(const Triangulation& m);
  /// Simplicial boundary as a (dim-1)-chain (index -> coefficient, zeros dropped).
  std::map<std::size_t, long> boundary(const Triangulation& m) const;
};

/// Alexander-Whitney product on vertex-sorted simplices, single modulus.
/// u and v carry exactly one component each.
GammaCochain cup_product(const Triangulation& t, const GammaCochain& u, const GammaCochain& v);

/// s = sum over top simplices of sign * (P u P)(sigma) mod n.
std::int64_t cup_square_pairing(const Triangulation& m, const GammaCochain& p);

/// Value of the action on a cocycle P; a single unit term.
PhaseSum evaluate_action(const Triangulation& m, const GammaCochain& p, const ActionSpec& spec);

/// Checks that the action is well defined on (m, p, Gamma).
void check_action_applicable(const Triangulation& m, int p, const FiniteAbelianGroup& gamma,
                             const ActionSpec& spec);

struct GaugeReport {
  bool holds = true;
  std::size_t classes = 0;
  std::size_t trials = 0;
  std::optional<std::size_t> failing_class;
};

/// For each class representative and `trials` random (p-1)-cochains phi,
/// compares the action of P and P + d phi exactly.
GaugeReport check_gauge_invariance(const Triangulation& m, int p, const FiniteAbelianGroup& gamma,
                                   const ActionSpec& spec, std::size_t trials,
                                   std::uint64_t seed = 1, std::uint64_t limit = 1000000);

}  // namespace dw
