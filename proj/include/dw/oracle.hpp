#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dw/action.hpp"
#include "dw/cohomology.hpp"

// Exhaustive cochain enumeration, independent of the Smith-form path.
namespace dw::oracle {

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma-element per free simplex, encoded as a mixed-radix digit in [0, |Gamma|).
using Cochain = std::vector<std::uint8_t>;

struct Enumeration {
  std::vector<Cochain> cocycles;  // all relative i-cocycles
  std::size_t coboundaries = 0;   // |B^i|
  std::vector<std::string> coboundary_keys;
};

/// Default bound on the number of cochains visited by one enumeration.
constexpr std::uint64_t kDefaultGuard = std::uint64_t{1} << 28;

/// Cocycles by pruned backtracking; coboundaries as the closure of the
/// images of unit (i-1)-cochains under addition.
Enumeration enumerate(const Pair& pair, int degree, const FiniteAbelianGroup& gamma,
                      std::uint64_t guard = kDefaultGuard);

struct CohomologyCheck {
  std::uint64_t cocycles = 0;
  std::uint64_t coboundaries = 0;
  std::uint64_t classes = 0;        // cocycles / coboundaries
  BigInt smith_order;
  bool orders_match = false;
  bool partition_matches = false;   // coordinate fibres are exactly the cosets of B
};

CohomologyCheck check_cohomology(const Pair& pair, int degree, const FiniteAbelianGroup& gamma,
                                 std::uint64_t guard = kDefaultGuard);

/// |H^i| = |Z^i| / |B^i| by enumeration.
BigInt class_count(const Pair& pair, int degree, const FiniteAbelianGroup& gamma,
                   std::uint64_t guard = kDefaultGuard);

struct PartitionOracle {
  Rational mu{1};
  std::uint64_t cocycles = 0;
  std::uint64_t coboundaries = 0;
  std::map<std::int64_t, std::uint64_t> pairing_histogram;  // s -> number of cocycles
  PhaseSum value;

  nlohmann::ordered_json to_json() const;
};

/// mu * (1/|B^p|) * sum over every p-cocycle of the action, for a closed M.
PartitionOracle partition(const Triangulation& m, int p, const FiniteAbelianGroup& gamma,
                          const ActionSpec& spec, std::uint64_t guard = kDefaultGuard);

}  // namespace dw::oracle
