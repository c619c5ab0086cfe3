#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dw/exact.hpp"

namespace dw {

/// Residue vector over Z_m; entries kept in [0, m).
using ModVector = std::vector<std::int64_t>;

/// Sparse integer matrix. Zero entries are never stored.
class IntMatrix {
 public:
  using Row = std::map<std::size_t, BigInt>;

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_dense(const std::vector<std::vector<long>>& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;

  BigInt get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const BigInt& value);
  void add(std::size_t r, std::size_t c, const BigInt& value);
  const Row& row(std::size_t r) const { return entries_[r]; }

  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;

  bool is_zero() const { return nonzeros() == 0; }
  bool is_diagonal() const;

  /// A x over Z_m for a residue vector x of length cols().
  ModVector apply_mod(const ModVector& x, std::int64_t m) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> entries_;
};

/// D = U * A * V with U, V unimodular, D diagonal with d_1 | d_2 | ... | d_r
/// positive and zeros trailing. The inverses of U and V are tracked
/// alongside so quotient coordinates and generators are both available.
struct SNFDecomposition {
  IntMatrix U, U_inv;
  IntMatrix V, V_inv;
  IntMatrix D;
  /// Nonzero diagonal entries d_1, ..., d_r.
  std::vector<BigInt> diagonal;

  std::size_t rank() const { return diagonal.size(); }
};

SNFDecomposition smith_normal_form(const IntMatrix& a);

/// { x in Z_m^cols : A x = 0 mod m } as a direct sum of cyclic subgroups.
struct ModKernel {
  std::int64_t modulus = 0;
  std::size_t length = 0;  // ambient dimension (cols of A)
  std::vector<ModVector> generators;
  std::vector<std::int64_t> orders;

  /// Coordinates of a kernel element in the generator basis (entry i taken
  /// modulo orders[i]). Throws std::invalid_argument if x is not in the kernel.
  std::vector<std::int64_t> coordinates(const ModVector& x) const;
  /// Sum of coordinates[i] * generators[i] mod m.
  ModVector combine(const std::vector<std::int64_t>& coordinates) const;

  struct CoordinateRow {
    std::vector<std::pair<std::size_t, std::int64_t>> entries;  // row of V^-1 mod m
    std::int64_t scale = 1;  // m / order
  };
  std::vector<CoordinateRow> coordinate_rows;
};

/// Z_m^rows / im(A mod m) with explicit projection coordinates.
struct ModCokernel {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> orders;  // cyclic factor orders, all > 1
  std::vector<ModVector> generators;  // lifts in Z_m^rows

  /// Coordinates of the class of y; entry i is taken modulo orders[i].
  std::vector<std::int64_t> coordinates(const ModVector& y) const;

  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> coordinate_rows;  // rows of U mod m
};

ModKernel kernel_mod(const SNFDecomposition& snf, std::int64_t m);
ModKernel kernel_mod(const IntMatrix& a, std::int64_t m);

ModCokernel cokernel_mod(const SNFDecomposition& snf, std::int64_t m);
ModCokernel cokernel_mod(const IntMatrix& a, std::int64_t m);

/// Some x with A x = b mod m, or nullopt when b is not in the image.
std::optional<ModVector> solve_in_image(const IntMatrix& a,
                                        const SNFDecomposition& snf,
                                        const ModVector& b, std::int64_t m);
std::optional<ModVector> solve_in_image(const IntMatrix& a, const ModVector& b,
                                        std::int64_t m);

std::int64_t mod_reduce(const BigInt& v, std::int64_t m);
std::int64_t mod_reduce(std::int64_t v, std::int64_t m);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);

}  // namespace dw
