#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dw/exact.hpp"
#include "dw/simplicial.hpp"
#include "dw/snf.hpp"

namespace dw {

/// Finite abelian group in invariant-factor form Z_{m_1} + ... + Z_{m_t},
/// m_1 | m_2 | ... | m_t, every m_j >= 2. The empty list is the trivial group.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  /// Normalizes an arbitrary list of cyclic orders (entries of 1 are dropped).
  static FiniteAbelianGroup from_cyclic(const std::vector<std::int64_t>& orders);
  static FiniteAbelianGroup cyclic(std::int64_t n) { return from_cyclic({n}); }

  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  BigInt order() const;
  bool is_trivial() const { return factors_.empty(); }
  bool is_cyclic() const { return factors_.size() <= 1; }
  std::string to_string() const;

  bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }

 private:
  std::vector<std::int64_t> factors_;
};

/// A Gamma-valued k-cochain: values[j][s] is the Z_{m_j} component on the
/// k-simplex s (all k-simplices of the complex, zero on a relative subspace).
struct GammaCochain {
  int degree = 0;
  std::vector<std::int64_t> moduli;
  std::vector<ModVector> values;

  static GammaCochain zero(const Triangulation& t, int k, const FiniteAbelianGroup& gamma);

  bool is_zero() const;
  GammaCochain operator+(const GammaCochain& o) const;
  GammaCochain operator-(const GammaCochain& o) const;
  GammaCochain scaled(std::int64_t k) const;
  bool operator==(const GammaCochain& o) const {
    return degree == o.degree && moduli == o.moduli && values == o.values;
  }
};

/// d c on the full complex.
GammaCochain differential(const Triangulation& t, const GammaCochain& c);

/// Pullback along a simplex map X -> Y: a cochain on Y becomes one on X.
GammaCochain pullback(const SimplexMap& map, const Triangulation& x, const GammaCochain& c);

/// Coboundary operators of a pair with lazily computed, cached Smith forms.
class CochainComplex {
 public:
  explicit CochainComplex(Pair pair);

  const Pair& pair() const { return pair_; }
  const Triangulation& space() const { return *pair_.space; }
  /// Full indices of the free (non-subspace) k-simplices.
  const std::vector<std::size_t>& free(int k) const;
  /// d : C^k -> C^{k+1}; k = -1 and k = dim give the zero maps at the ends.
  const IntMatrix& coboundary(int k) const;
  const SNFDecomposition& snf(int k) const;

  ModVector restrict_to_free(const ModVector& full, int k) const;
  ModVector extend_from_free(const ModVector& rel, int k) const;
  /// True when the full-length vector vanishes on the subspace.
  bool vanishes_on_subspace(const ModVector& full, int k) const;

 private:
  struct Slot {
    std::once_flag once;
    SNFDecomposition snf;
  };
  Pair pair_;
  std::vector<std::vector<std::size_t>> free_;
  std::vector<IntMatrix> coboundaries_;  // index k + 1
  std::vector<std::unique_ptr<Slot>> snfs_;
};

using CochainComplexPtr = std::shared_ptr<const CochainComplex>;
CochainComplexPtr make_complex(Pair pair);

class EnumerationLimitExceeded : public std::runtime_error {
 public:
  EnumerationLimitExceeded(const BigInt& order, std::uint64_t limit);
  const BigInt& order() const { return order_; }

 private:
  BigInt order_;
};

/// H^i(X, A; Gamma) with generator cocycles and a coordinate solver.
class CohomologyGroup {
 public:
  int degree() const { return degree_; }
  const FiniteAbelianGroup& coefficients() const { return gamma_; }
  const CochainComplexPtr& complex() const { return complex_; }

  /// Orders of the cyclic generators (concatenated over the invariant factors
  /// of Gamma); each is > 1.
  const std::vector<std::int64_t>& cyclic_orders() const { return orders_; }
  BigInt order() const;
  const std::vector<GammaCochain>& representatives() const { return reps_; }

  /// Whether c is a cocycle of the pair (closed and vanishing on the subspace).
  bool is_cocycle(const GammaCochain& c) const;
  /// Class of a cocycle in generator coordinates; throws if c is not a cocycle.
  std::vector<std::int64_t> coordinates(const GammaCochain& c) const;
  /// The cocycle sum_k coords[k] * representatives[k].
  GammaCochain representative(const std::vector<std::int64_t>& coords) const;

  nlohmann::ordered_json to_json() const;

 private:
  friend CohomologyGroup cohomology(CochainComplexPtr, int, const FiniteAbelianGroup&);

  struct Factor {
    std::int64_t modulus = 0;
    ModKernel cocycles;
    ModCokernel quotient;  // of the cocycle coordinates by the coboundaries
    std::size_t offset = 0;
  };

  CochainComplexPtr complex_;
  int degree_ = 0;
  FiniteAbelianGroup gamma_;
  std::vector<std::int64_t> orders_;
  std::vector<GammaCochain> reps_;
  std::vector<Factor> factors_;
};

CohomologyGroup cohomology(CochainComplexPtr complex, int degree, const FiniteAbelianGroup& gamma);
CohomologyGroup cohomology(const Pair& pair, int degree, const FiniteAbelianGroup& gamma);

BigInt order(const CohomologyGroup& h);

/// One cocycle per class, coordinates in lexicographic order (first
/// coordinate most significant).
std::vector<GammaCochain> enumerate_classes(const CohomologyGroup& h, std::uint64_t limit);

/// A (degree-1)-cochain phi vanishing on the subspace with d phi = c2 - c1,
/// or nullopt when the classes differ.
std::optional<GammaCochain> is_cohomologous(const CohomologyGroup& h, const GammaCochain& c1,
                                            const GammaCochain& c2);

/// Homomorphism between finite abelian groups in cyclic coordinates.
struct GroupHom {
  std::vector<std::int64_t> source_orders;
  std::vector<std::int64_t> target_orders;
  std::vector<std::vector<std::int64_t>> matrix;  // [target coord][source coord]
  BigInt kernel_order;
  BigInt image_order;
};

/// Order of ker(f) for f given by `matrix` between cyclic decompositions.
BigInt hom_kernel_order(const std::vector<std::vector<std::int64_t>>& matrix,
                        const std::vector<std::int64_t>& source_orders,
                        const std::vector<std::int64_t>& target_orders);

/// The map induced on cohomology by pulling back along `map` (from the
/// target's space to the source's space). An empty map means both groups
/// live on the same triangulation and the map is the identity on cochains
/// (the forgetful map between pairs).
GroupHom restriction_map(const CohomologyGroup& source, const CohomologyGroup& target,
                         const SimplexMap& map = {});

/// Integral cohomology H^i(X, A; Z) = Z^free_rank + torsion.
struct IntegralCohomology {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;
};
IntegralCohomology integral_cohomology(const CochainComplex& complex, int degree);

/// |H^i(X, A; Z_m)| predicted by universal coefficients from integral data.
BigInt universal_coefficient_order(const CochainComplex& complex, int degree, std::int64_t m);

}  // namespace dw
