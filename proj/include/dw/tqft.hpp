#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dw/action.hpp"
#include "dw/measure.hpp"

namespace dw {

constexpr std::uint64_t kDefaultLimit = 1000000;

/// E(M) or E(M, Q): one cocycle per field class.
struct FieldSpace {
  TriangulationPtr ambient;
  std::vector<GammaCochain> classes;
  std::optional<GammaCochain> torsor_base;  // relative case only
};

/// A cocycle on M extending `boundary_values` (a p-cochain on M supported on
/// dM, closed there), or nullopt when its class does not extend.
std::optional<GammaCochain> extend_from_boundary(const CochainComplex& relative,
                                                 const GammaCochain& boundary_values);

/// Absolute classes when `boundary_values` is absent; otherwise the orbit of
/// one extension under H^p(M, dM; Gamma), empty when no extension exists.
FieldSpace field_space(const TriangulationPtr& m, int p, const FiniteAbelianGroup& gamma,
                       const std::optional<GammaCochain>& boundary_values = std::nullopt,
                       std::uint64_t limit = kDefaultLimit);

struct PartitionValue {
  PhaseSum value;
  Rational mu{1};
  std::size_t classes = 0;

  nlohmann::ordered_json to_json() const;
};

/// mu_M * sum over H^p(M; Gamma) of the action.
PartitionValue partition_closed(const TriangulationPtr& m, int p, const FiniteAbelianGroup& gamma,
                                const ActionSpec& spec, std::uint64_t limit = kDefaultLimit);

/// Basis of boundary field classes with inner product mu_N * delta. The
/// representatives are fixed here and shared by every bordism using N.
struct StateSpace {
  TriangulationPtr boundary;
  int p = 1;
  FiniteAbelianGroup gamma;
  std::vector<GammaCochain> basis;
  Rational ip_scale{1};

  std::size_t dim() const { return basis.size(); }
  bool is_unit() const { return boundary->empty(); }
  nlohmann::ordered_json to_json() const;
};
using StateSpacePtr = std::shared_ptr<const StateSpace>;

StateSpacePtr state_space(const TriangulationPtr& n, int p, const FiniteAbelianGroup& gamma,
                          std::uint64_t limit = kDefaultLimit);
/// The monoidal unit: the empty boundary.
StateSpacePtr unit_state_space(int p, const FiniteAbelianGroup& gamma);

/// One side of a bordism: a boundary subcomplex identified with the state
/// space's triangulation through a vertex chart (empty chart = same labels).
struct BoundarySide {
  std::string subcomplex;  // empty name = empty side
  std::map<std::string, std::string> chart;
  StateSpacePtr space;
};

struct BordismMatrix {
  StateSpacePtr source;
  StateSpacePtr target;
  std::vector<std::vector<PhaseSum>> entries;  // [source basis][target basis]
  Rational mu{1};

  nlohmann::ordered_json to_json() const;
};

BordismMatrix bordism_matrix(const TriangulationPtr& b, const BoundarySide& in,
                             const BoundarySide& out, const ActionSpec& spec,
                             std::uint64_t limit = kDefaultLimit);

/// mu_N * sum of the diagonal entries.
PhaseSum trace_glue(const BordismMatrix& x);

/// entry(Q1, Q3) = mu_N2 * sum over Q2 of A(Q1, Q2) B(Q2, Q3).
BordismMatrix compose_bordisms(const BordismMatrix& a, const BordismMatrix& b);

bool matrices_approx_equal(const BordismMatrix& a, const BordismMatrix& b, double tol);

struct GluingReport {
  Rational mu_M, mu_MN, mu_N, mu_rel;
  BigInt K_order;
  PhaseSum lhs, rhs;
  bool exact = false;         // structural equality of lhs and rhs
  bool holds = false;         // exact for trivial actions, within tol otherwise
  bool excision = false;      // mu_(M,N) == mu_{M_N}
  bool lemma1 = false;        // mu_M == |K| mu_(M,N) mu_N
  bool pullback_closed = false;  // pi* of every class of M is a cocycle on M_N

  nlohmann::ordered_json to_json() const;
};

/// Glues M_N along its GluingSpec (closed result required) and compares
/// Z(M) with the glued trace of the bordism M_N : N -> N.
GluingReport verify_gluing(const TriangulationPtr& cut, int p, const FiniteAbelianGroup& gamma,
                           const ActionSpec& spec, double tol, std::uint64_t limit = kDefaultLimit);

struct DaggerReport {
  PhaseSum z, z_reversed;
  bool holds = false;
};
DaggerReport dagger_check(const TriangulationPtr& m, int p, const FiniteAbelianGroup& gamma,
                          const ActionSpec& spec, std::uint64_t limit = kDefaultLimit);

struct MonoidalReport {
  PhaseSum z_union, z_product;
  bool holds = false;
};
MonoidalReport monoidal_check(const TriangulationPtr& a, const TriangulationPtr& b, int p,
                              const FiniteAbelianGroup& gamma, const ActionSpec& spec,
                              std::uint64_t limit = kDefaultLimit);

nlohmann::ordered_json phase_report(const PhaseSum& s);

}  // namespace dw
