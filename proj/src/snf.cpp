#include "dw/snf.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dw {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i].emplace(i, 1);
  return m;
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<long>>& dense) {
  const std::size_t cols = dense.empty() ? 0 : dense.front().size();
  IntMatrix m(dense.size(), cols);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) {
      throw std::invalid_argument("IntMatrix::from_dense: ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dense[r][c]);
  }
  return m;
}

std::size_t IntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : entries_) n += row.size();
  return n;
}

BigInt IntMatrix::get(std::size_t r, std::size_t c) const {
  const auto& row = entries_.at(r);
  auto it = row.find(c);
  return it == row.end() ? BigInt(0) : it->second;
}

void IntMatrix::set(std::size_t r, std::size_t c, const BigInt& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("IntMatrix::set");
  if (value == 0) {
    entries_[r].erase(c);
  } else {
    entries_[r][c] = value;
  }
}

void IntMatrix::add(std::size_t r, std::size_t c, const BigInt& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("IntMatrix::add");
  auto& row = entries_[r];
  auto [it, inserted] = row.emplace(c, value);
  if (!inserted) it->second += value;
  if (it->second == 0) row.erase(it);
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : entries_[r]) t.entries_[c].emplace(r, v);
  }
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [k, a] : entries_[r]) {
      for (const auto& [c, b] : o.entries_[k]) out.add(r, c, a * b);
    }
  }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : entries_[r]) {
      if (c != r) return false;
    }
  }
  return true;
}

ModVector IntMatrix::apply_mod(const ModVector& x, std::int64_t m) const {
  if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply_mod: size");
  ModVector y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::int64_t acc = 0;
    for (const auto& [c, v] : entries_[r]) {
      acc = (acc + mul_mod(mod_reduce(v, m), x[c], m)) % m;
    }
    y[r] = acc;
  }
  return y;
}

std::int64_t mod_reduce(const BigInt& v, std::int64_t m) {
  return static_cast<std::int64_t>(
      mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m)));
}

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(
      static_cast<__int128>(a) * static_cast<__int128>(b) % m);
}

namespace {

// Working matrix for elimination: sparse rows plus a column occupancy index
// so both row and column operations touch only nonzeros.
class Work {
 public:
  Work(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  explicit Work(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& [c, v] : m.row(r)) {
        rows_[r].emplace(c, v);
        cols_[c].insert(r);
      }
    }
  }

  static Work identity(std::size_t n) {
    Work w(n, n);
    for (std::size_t i = 0; i < n; ++i) w.set(i, i, 1);
    return w;
  }

  std::size_t row_count() const { return rows_.size(); }
  const std::map<std::size_t, BigInt>& row(std::size_t r) const { return rows_[r]; }
  const std::set<std::size_t>& col(std::size_t c) const { return cols_[c]; }

  BigInt get(std::size_t r, std::size_t c) const {
    auto it = rows_[r].find(c);
    return it == rows_[r].end() ? BigInt(0) : it->second;
  }

  void set(std::size_t r, std::size_t c, const BigInt& v) {
    if (v == 0) {
      rows_[r].erase(c);
      cols_[c].erase(r);
    } else {
      rows_[r][c] = v;
      cols_[c].insert(r);
    }
  }

  // row_i += q * row_src
  void row_axpy(std::size_t i, std::size_t src, const BigInt& q) {
    if (q == 0) return;
    const auto source = rows_[src];
    for (const auto& [c, v] : source) set(i, c, get(i, c) + q * v);
  }

  // col_j += q * col_src
  void col_axpy(std::size_t j, std::size_t src, const BigInt& q) {
    if (q == 0) return;
    const auto source = cols_[src];
    for (std::size_t r : source) set(r, j, get(r, j) + q * get(r, src));
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (const auto& [c, v] : rows_[i]) cols_[c].erase(i);
    for (const auto& [c, v] : rows_[j]) cols_[c].erase(j);
    std::swap(rows_[i], rows_[j]);
    for (const auto& [c, v] : rows_[i]) cols_[c].insert(i);
    for (const auto& [c, v] : rows_[j]) cols_[c].insert(j);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::set<std::size_t> touched = cols_[i];
    touched.insert(cols_[j].begin(), cols_[j].end());
    for (std::size_t r : touched) {
      BigInt a = get(r, i);
      BigInt b = get(r, j);
      set(r, i, b);
      set(r, j, a);
    }
  }

  void negate_row(std::size_t i) {
    for (auto& [c, v] : rows_[i]) v = -v;
  }

  void negate_col(std::size_t j) {
    for (std::size_t r : cols_[j]) rows_[r][j] = -rows_[r][j];
  }

  // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
  void combine_rows(std::size_t i, std::size_t j, const BigInt& a, const BigInt& b,
                    const BigInt& c, const BigInt& d) {
    std::set<std::size_t> keys;
    for (const auto& [k, v] : rows_[i]) keys.insert(k);
    for (const auto& [k, v] : rows_[j]) keys.insert(k);
    for (std::size_t k : keys) {
      BigInt x = get(i, k);
      BigInt y = get(j, k);
      set(i, k, a * x + b * y);
      set(j, k, c * x + d * y);
    }
  }

  // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
  void combine_cols(std::size_t i, std::size_t j, const BigInt& a, const BigInt& b,
                    const BigInt& c, const BigInt& d) {
    std::set<std::size_t> keys = cols_[i];
    keys.insert(cols_[j].begin(), cols_[j].end());
    for (std::size_t k : keys) {
      BigInt x = get(k, i);
      BigInt y = get(k, j);
      set(k, i, a * x + b * y);
      set(k, j, c * x + d * y);
    }
  }

  IntMatrix to_matrix() const {
    IntMatrix m(rows_.size(), cols_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, v] : rows_[r]) m.set(r, c, v);
    }
    return m;
  }

 private:
  std::vector<std::map<std::size_t, BigInt>> rows_;
  std::vector<std::set<std::size_t>> cols_;
};

class Reducer {
 public:
  explicit Reducer(const IntMatrix& a)
      : a_(a),
        u_(Work::identity(a.rows())),
        u_inv_(Work::identity(a.rows())),
        v_(Work::identity(a.cols())),
        v_inv_(Work::identity(a.cols())),
        nrows_(a.rows()),
        ncols_(a.cols()) {}

  SNFDecomposition run() {
    std::size_t t = 0;
    while (t < nrows_ && t < ncols_) {
      auto pivot = find_pivot(t);
      if (!pivot) break;
      row_swap(t, pivot->first);
      col_swap(t, pivot->second);
      clear_cross(t);
      if (a_.get(t, t) < 0) row_negate(t);
      ++t;
    }
    const std::size_t rank = t;
    enforce_divisibility(rank);

    SNFDecomposition out;
    out.U = u_.to_matrix();
    out.U_inv = u_inv_.to_matrix();
    out.V = v_.to_matrix();
    out.V_inv = v_inv_.to_matrix();
    out.D = a_.to_matrix();
    for (std::size_t i = 0; i < rank; ++i) out.diagonal.push_back(a_.get(i, i));
    return out;
  }

 private:
  // Nonzero entry of minimal absolute value in the trailing block; ties go to
  // the lowest row, then the lowest column.
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t r = t; r < nrows_; ++r) {
      for (const auto& [c, v] : a_.row(r)) {
        if (c < t) continue;
        BigInt av = abs(v);
        if (!best || av < best_abs) {
          best = {r, c};
          best_abs = av;
          if (best_abs == 1) return best;
        }
      }
    }
    return best;
  }

  void clear_cross(std::size_t t) {
    while (true) {
      const BigInt p = a_.get(t, t);
      std::vector<std::size_t> below;
      for (std::size_t r : a_.col(t)) {
        if (r != t) below.push_back(r);
      }
      for (std::size_t r : below) {
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), a_.get(r, t).get_mpz_t(), p.get_mpz_t());
        row_axpy(r, t, -q);
      }
      if (auto r = min_in_col(t)) {
        row_swap(t, *r);
        continue;
      }
      std::vector<std::size_t> right;
      for (const auto& [c, v] : a_.row(t)) {
        if (c != t) right.push_back(c);
      }
      for (std::size_t c : right) {
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), a_.get(t, c).get_mpz_t(), p.get_mpz_t());
        col_axpy(c, t, -q);
      }
      if (auto c = min_in_row(t)) {
        col_swap(t, *c);
        continue;
      }
      return;
    }
  }

  std::optional<std::size_t> min_in_col(std::size_t t) const {
    std::optional<std::size_t> best;
    BigInt best_abs;
    for (std::size_t r : a_.col(t)) {
      if (r == t) continue;
      BigInt av = abs(a_.get(r, t));
      if (!best || av < best_abs) {
        best = r;
        best_abs = av;
      }
    }
    return best;
  }

  std::optional<std::size_t> min_in_row(std::size_t t) const {
    std::optional<std::size_t> best;
    BigInt best_abs;
    for (const auto& [c, v] : a_.row(t)) {
      if (c == t) continue;
      BigInt av = abs(v);
      if (!best || av < best_abs) {
        best = c;
        best_abs = av;
      }
    }
    return best;
  }

  // Replaces diag(a, b) by diag(gcd, lcm) pairwise until d_i | d_{i+1}.
  void enforce_divisibility(std::size_t rank) {
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = i + 1; j < rank; ++j) {
        const BigInt a = a_.get(i, i);
        const BigInt b = a_.get(j, j);
        if (b % a == 0) continue;
        BigInt g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                   b.get_mpz_t());
        const BigInt ag = a / g;
        const BigInt bg = b / g;
        u_.combine_rows(i, j, s, t, -bg, ag);
        u_inv_.combine_cols(i, j, ag, bg, -t, s);
        v_.combine_cols(i, j, 1, 1, -t * bg, s * ag);
        v_inv_.combine_rows(i, j, s * ag, t * bg, -1, 1);
        a_.set(i, i, g);
        a_.set(j, j, a * bg);
      }
    }
  }

  void row_axpy(std::size_t i, std::size_t src, const BigInt& q) {
    a_.row_axpy(i, src, q);
    u_.row_axpy(i, src, q);
    u_inv_.col_axpy(src, i, -q);
  }
  void col_axpy(std::size_t j, std::size_t src, const BigInt& q) {
    a_.col_axpy(j, src, q);
    v_.col_axpy(j, src, q);
    v_inv_.row_axpy(src, j, -q);
  }
  void row_swap(std::size_t i, std::size_t j) {
    a_.swap_rows(i, j);
    u_.swap_rows(i, j);
    u_inv_.swap_cols(i, j);
  }
  void col_swap(std::size_t i, std::size_t j) {
    a_.swap_cols(i, j);
    v_.swap_cols(i, j);
    v_inv_.swap_rows(i, j);
  }
  void row_negate(std::size_t i) {
    a_.negate_row(i);
    u_.negate_row(i);
    u_inv_.negate_col(i);
  }

  Work a_, u_, u_inv_, v_, v_inv_;
  std::size_t nrows_, ncols_;
};

std::int64_t gcd_with(const BigInt& d, std::int64_t m) {
  return static_cast<std::int64_t>(
      mpz_gcd_ui(nullptr, d.get_mpz_t(), static_cast<unsigned long>(m)));
}

std::vector<std::pair<std::size_t, std::int64_t>> reduced_row(const IntMatrix& mat,
                                                               std::size_t r,
                                                               std::int64_t m) {
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  for (const auto& [c, v] : mat.row(r)) {
    std::int64_t x = mod_reduce(v, m);
    if (x != 0) out.emplace_back(c, x);
  }
  return out;
}

std::int64_t dot_mod(const std::vector<std::pair<std::size_t, std::int64_t>>& row,
                     const ModVector& x, std::int64_t m) {
  std::int64_t acc = 0;
  for (const auto& [c, v] : row) acc = (acc + mul_mod(v, x[c], m)) % m;
  return acc;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  BigInt inv;
  BigInt am(static_cast<long>(a)), mm(static_cast<long>(m));
  if (mpz_invert(inv.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t()) == 0) {
    throw std::logic_error("inverse_mod: not invertible");
  }
  return mod_reduce(inv, m);
}

void check_modulus(std::int64_t m) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
}

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix& a) { return Reducer(a).run(); }

std::vector<std::int64_t> ModKernel::coordinates(const ModVector& x) const {
  std::vector<std::int64_t> out;
  out.reserve(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto& row = coordinate_rows[i];
    const std::int64_t v = dot_mod(row.entries, x, modulus);
    if (v % row.scale != 0) {
      throw std::invalid_argument("ModKernel::coordinates: vector not in kernel");
    }
    out.push_back((v / row.scale) % orders[i]);
  }
  return out;
}

ModVector ModKernel::combine(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != generators.size()) {
    throw std::invalid_argument("ModKernel::combine: coordinate count");
  }
  ModVector x(length, 0);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const std::int64_t k = mod_reduce(coords[i], modulus);
    if (k == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = (x[j] + mul_mod(k, generators[i][j], modulus)) % modulus;
    }
  }
  return x;
}

ModKernel kernel_mod(const SNFDecomposition& snf, std::int64_t m) {
  check_modulus(m);
  const std::size_t cols = snf.V.cols();
  const IntMatrix vt = snf.V.transposed();
  ModKernel k;
  k.modulus = m;
  k.length = cols;
  for (std::size_t j = 0; j < cols; ++j) {
    const std::int64_t g = j < snf.rank() ? gcd_with(snf.diagonal[j], m) : m;
    if (g == 1) continue;
    const std::int64_t scale = m / g;
    ModVector gen(cols, 0);
    for (const auto& [r, v] : vt.row(j)) gen[r] = mul_mod(mod_reduce(v, m), scale, m);
    k.generators.push_back(std::move(gen));
    k.orders.push_back(g);
    k.coordinate_rows.push_back({reduced_row(snf.V_inv, j, m), scale});
  }
  return k;
}

ModKernel kernel_mod(const IntMatrix& a, std::int64_t m) {
  return kernel_mod(smith_normal_form(a), m);
}

std::vector<std::int64_t> ModCokernel::coordinates(const ModVector& y) const {
  std::vector<std::int64_t> out;
  out.reserve(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    out.push_back(dot_mod(coordinate_rows[i], y, modulus) % orders[i]);
  }
  return out;
}

ModCokernel cokernel_mod(const SNFDecomposition& snf, std::int64_t m) {
  check_modulus(m);
  const std::size_t rows = snf.U.rows();
  const IntMatrix uinv_t = snf.U_inv.transposed();
  ModCokernel q;
  q.modulus = m;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int64_t g = i < snf.rank() ? gcd_with(snf.diagonal[i], m) : m;
    if (g == 1) continue;
    ModVector gen(rows, 0);
    for (const auto& [r, v] : uinv_t.row(i)) gen[r] = mod_reduce(v, m);
    q.generators.push_back(std::move(gen));
    q.orders.push_back(g);
    q.coordinate_rows.push_back(reduced_row(snf.U, i, m));
  }
  return q;
}

ModCokernel cokernel_mod(const IntMatrix& a, std::int64_t m) {
  return cokernel_mod(smith_normal_form(a), m);
}

std::optional<ModVector> solve_in_image(const IntMatrix& a,
                                        const SNFDecomposition& snf,
                                        const ModVector& b, std::int64_t m) {
  check_modulus(m);
  if (b.size() != a.rows()) throw std::invalid_argument("solve_in_image: size");
  ModVector target(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) target[i] = mod_reduce(b[i], m);
  const std::size_t rank = snf.rank();
  ModVector xp(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::int64_t c = dot_mod(reduced_row(snf.U, i, m), target, m);
    if (i >= rank) {
      if (c != 0) return std::nullopt;
      continue;
    }
    const std::int64_t g = gcd_with(snf.diagonal[i], m);
    if (c % g != 0) return std::nullopt;
    const std::int64_t mg = m / g;
    const std::int64_t dg = mod_reduce(BigInt(snf.diagonal[i] / g), mg);
    xp[i] = mul_mod(c / g, inverse_mod(dg, mg), mg);
  }
  ModVector x = snf.V.apply_mod(xp, m);
  if (a.apply_mod(x, m) != target) {
    throw std::logic_error("solve_in_image: witness failed substitution");
  }
  return x;
}

std::optional<ModVector> solve_in_image(const IntMatrix& a, const ModVector& b,
                                        std::int64_t m) {
  return solve_in_image(a, smith_normal_form(a), b, m);
}

}  // namespace dw
