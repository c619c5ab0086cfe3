#include "dw/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dw {

// -------------------------------------------------------- FiniteAbelianGroup

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic(const std::vector<std::int64_t>& orders) {
  // prime -> exponents of that prime across the cyclic factors
  std::map<std::int64_t, std::vector<std::int64_t>> powers;
  for (std::int64_t n : orders) {
    if (n < 1) throw std::invalid_argument("cyclic factor orders must be positive");
    for (std::int64_t p = 2; p * p <= n; ++p) {
      std::int64_t q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      if (q > 1) powers[p].push_back(q);
    }
    if (n > 1) powers[n].push_back(n);
  }
  std::size_t length = 0;
  for (auto& [p, list] : powers) {
    std::sort(list.begin(), list.end(), std::greater<>());
    length = std::max(length, list.size());
  }
  // the largest invariant factor collects the largest prime powers
  std::vector<std::int64_t> factors(length, 1);
  for (const auto& [p, list] : powers) {
    for (std::size_t i = 0; i < list.size(); ++i) factors[length - 1 - i] *= list[i];
  }
  FiniteAbelianGroup g;
  g.factors_ = std::move(factors);
  return g;
}

BigInt FiniteAbelianGroup::order() const {
  BigInt n = 1;
  for (auto m : factors_) n *= static_cast<long>(m);
  return n;
}

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "+" : "") << "Z" << factors_[i];
  return os.str();
}

// -------------------------------------------------------------- GammaCochain

GammaCochain GammaCochain::zero(const Triangulation& t, int k, const FiniteAbelianGroup& gamma) {
  GammaCochain c;
  c.degree = k;
  c.moduli = gamma.invariant_factors();
  c.values.assign(c.moduli.size(), ModVector(t.count(k), 0));
  return c;
}

bool GammaCochain::is_zero() const {
  for (const auto& v : values) {
    for (auto x : v) {
      if (x != 0) return false;
    }
  }
  return true;
}

namespace {

void require_compatible(const GammaCochain& a, const GammaCochain& b) {
  if (a.degree != b.degree || a.moduli != b.moduli || a.values.size() != b.values.size()) {
    throw std::invalid_argument("GammaCochain: incompatible operands");
  }
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    if (a.values[j].size() != b.values[j].size()) {
      throw std::invalid_argument("GammaCochain: cochains on different complexes");
    }
  }
}

}  // namespace

GammaCochain GammaCochain::operator+(const GammaCochain& o) const {
  require_compatible(*this, o);
  GammaCochain r = *this;
  for (std::size_t j = 0; j < values.size(); ++j) {
    for (std::size_t s = 0; s < values[j].size(); ++s) {
      r.values[j][s] = (values[j][s] + o.values[j][s]) % moduli[j];
    }
  }
  return r;
}

GammaCochain GammaCochain::operator-(const GammaCochain& o) const {
  require_compatible(*this, o);
  GammaCochain r = *this;
  for (std::size_t j = 0; j < values.size(); ++j) {
    for (std::size_t s = 0; s < values[j].size(); ++s) {
      r.values[j][s] = mod_reduce(values[j][s] - o.values[j][s], moduli[j]);
    }
  }
  return r;
}

GammaCochain GammaCochain::scaled(std::int64_t k) const {
  GammaCochain r = *this;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const std::int64_t kk = mod_reduce(k, moduli[j]);
    for (auto& x : r.values[j]) x = mul_mod(x, kk, moduli[j]);
  }
  return r;
}

GammaCochain differential(const Triangulation& t, const GammaCochain& c) {
  GammaCochain out;
  out.degree = c.degree + 1;
  out.moduli = c.moduli;
  out.values.assign(c.moduli.size(), ModVector(t.count(c.degree + 1), 0));
  const auto& higher = t.simplices(c.degree + 1);
  for (std::size_t r = 0; r < higher.size(); ++r) {
    const Simplex& s = higher[r];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face;
      for (std::size_t q = 0; q < s.size(); ++q) {
        if (q != i) face.push_back(s[q]);
      }
      const std::size_t f = *t.index_of(face);
      for (std::size_t j = 0; j < c.moduli.size(); ++j) {
        const std::int64_t m = c.moduli[j];
        const std::int64_t v = c.values[j][f];
        out.values[j][r] = mod_reduce(out.values[j][r] + (i % 2 == 0 ? v : -v), m);
      }
    }
  }
  return out;
}

GammaCochain pullback(const SimplexMap& map, const Triangulation& x, const GammaCochain& c) {
  GammaCochain out;
  out.degree = c.degree;
  out.moduli = c.moduli;
  out.values.assign(c.moduli.size(), ModVector(x.count(c.degree), 0));
  if (x.count(c.degree) == 0) return out;
  const auto& images = map.images.at(c.degree);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto [idx, sign] = images[i];
    if (idx == SIZE_MAX) continue;
    for (std::size_t j = 0; j < c.moduli.size(); ++j) {
      out.values[j][i] = mod_reduce(sign * c.values[j].at(idx), c.moduli[j]);
    }
  }
  return out;
}

// ------------------------------------------------------------ CochainComplex

CochainComplex::CochainComplex(Pair pair) : pair_(std::move(pair)) {
  const int dim = pair_.space->dim();
  for (int k = 0; k <= dim; ++k) free_.push_back(free_simplices(pair_, k));
  // coboundary(k) for k in [-1, dim + 1]
  for (int k = -1; k <= dim + 1; ++k) {
    if (k >= 0 && k < dim) {
      coboundaries_.push_back(coboundary_matrix(pair_, k));
    } else {
      coboundaries_.emplace_back(free(k + 1).size(), free(k).size());
    }
    snfs_.push_back(std::make_unique<Slot>());
  }
}

const std::vector<std::size_t>& CochainComplex::free(int k) const {
  static const std::vector<std::size_t> none;
  if (k < 0 || k >= static_cast<int>(free_.size())) return none;
  return free_[k];
}

const IntMatrix& CochainComplex::coboundary(int k) const {
  const int slot = k + 1;
  if (slot < 0 || slot >= static_cast<int>(coboundaries_.size())) {
    throw std::out_of_range("CochainComplex::coboundary: degree out of range");
  }
  return coboundaries_[slot];
}

const SNFDecomposition& CochainComplex::snf(int k) const {
  const IntMatrix& d = coboundary(k);
  Slot& slot = *snfs_[k + 1];
  std::call_once(slot.once, [&] { slot.snf = smith_normal_form(d); });
  return slot.snf;
}

ModVector CochainComplex::restrict_to_free(const ModVector& full, int k) const {
  const auto& idx = free(k);
  ModVector rel(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) rel[i] = full.at(idx[i]);
  return rel;
}

ModVector CochainComplex::extend_from_free(const ModVector& rel, int k) const {
  const auto& idx = free(k);
  ModVector full(space().count(k), 0);
  for (std::size_t i = 0; i < idx.size(); ++i) full[idx[i]] = rel.at(i);
  return full;
}

bool CochainComplex::vanishes_on_subspace(const ModVector& full, int k) const {
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (full[i] != 0 && pair_.subspace.contains(k, i)) return false;
  }
  return true;
}

CochainComplexPtr make_complex(Pair pair) {
  return std::make_shared<const CochainComplex>(std::move(pair));
}

EnumerationLimitExceeded::EnumerationLimitExceeded(const BigInt& order, std::uint64_t limit)
    : std::runtime_error("class enumeration limit exceeded: " + order.get_str() + " classes > " +
                         std::to_string(limit)),
      order_(order) {}

// ----------------------------------------------------------- CohomologyGroup

CohomologyGroup cohomology(CochainComplexPtr complex, int degree, const FiniteAbelianGroup& gamma) {
  if (degree < 0) throw std::invalid_argument("cohomology: negative degree");
  CohomologyGroup h;
  h.complex_ = complex;
  h.degree_ = degree;
  h.gamma_ = gamma;
  const Triangulation& t = complex->space();
  if (degree > t.dim() + 1) {
    for (auto m : gamma.invariant_factors()) h.factors_.push_back({m, {}, {}, 0});
    return h;
  }
  const IntMatrix lower_t = complex->coboundary(degree - 1).transposed();
  for (std::size_t j = 0; j < gamma.invariant_factors().size(); ++j) {
    const std::int64_t m = gamma.invariant_factors()[j];
    CohomologyGroup::Factor f;
    f.modulus = m;
    f.offset = h.orders_.size();
    f.cocycles = kernel_mod(complex->snf(degree), m);
    const std::size_t s = f.cocycles.orders.size();
    if (s > 0) {
      // cocycle coordinates modulo the coboundaries: Z^s / <diag(orders), d-images>
      IntMatrix presentation(s, s + lower_t.rows());
      for (std::size_t a = 0; a < s; ++a) presentation.set(a, a, static_cast<long>(f.cocycles.orders[a]));
      for (std::size_t c = 0; c < lower_t.rows(); ++c) {
        ModVector column(lower_t.cols(), 0);
        for (const auto& [r, v] : lower_t.row(c)) column[r] = mod_reduce(v, m);
        const auto y = f.cocycles.coordinates(column);
        for (std::size_t a = 0; a < s; ++a) {
          if (y[a] != 0) presentation.set(a, s + c, static_cast<long>(y[a]));
        }
      }
      f.quotient = cokernel_mod(presentation, m);
      for (std::size_t k = 0; k < f.quotient.orders.size(); ++k) {
        h.orders_.push_back(f.quotient.orders[k]);
        GammaCochain rep = GammaCochain::zero(t, degree, gamma);
        rep.values[j] = complex->extend_from_free(f.cocycles.combine(f.quotient.generators[k]), degree);
        h.reps_.push_back(std::move(rep));
      }
    }
    h.factors_.push_back(std::move(f));
  }
  return h;
}

CohomologyGroup cohomology(const Pair& pair, int degree, const FiniteAbelianGroup& gamma) {
  return cohomology(make_complex(pair), degree, gamma);
}

BigInt CohomologyGroup::order() const {
  BigInt n = 1;
  for (auto o : orders_) n *= static_cast<long>(o);
  return n;
}

BigInt order(const CohomologyGroup& h) { return h.order(); }

bool CohomologyGroup::is_cocycle(const GammaCochain& c) const {
  const Triangulation& t = complex_->space();
  if (c.degree != degree_ || c.moduli != gamma_.invariant_factors()) return false;
  for (std::size_t j = 0; j < c.values.size(); ++j) {
    if (c.values[j].size() != t.count(degree_)) return false;
    if (!complex_->vanishes_on_subspace(c.values[j], degree_)) return false;
  }
  return differential(t, c).is_zero();
}

std::vector<std::int64_t> CohomologyGroup::coordinates(const GammaCochain& c) const {
  if (!is_cocycle(c)) throw std::invalid_argument("CohomologyGroup::coordinates: not a cocycle");
  std::vector<std::int64_t> out;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    const Factor& f = factors_[j];
    if (f.cocycles.orders.empty()) continue;
    const auto y = f.cocycles.coordinates(complex_->restrict_to_free(c.values[j], degree_));
    const auto z = f.quotient.coordinates(y);
    out.insert(out.end(), z.begin(), z.end());
  }
  return out;
}

GammaCochain CohomologyGroup::representative(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != reps_.size()) {
    throw std::invalid_argument("CohomologyGroup::representative: coordinate count");
  }
  GammaCochain c = GammaCochain::zero(complex_->space(), degree_, gamma_);
  for (std::size_t k = 0; k < reps_.size(); ++k) {
    if (mod_reduce(coords[k], orders_[k]) != 0) c = c + reps_[k].scaled(coords[k]);
  }
  return c;
}

nlohmann::ordered_json CohomologyGroup::to_json() const {
  nlohmann::ordered_json j;
  j["degree"] = degree_;
  j["coefficients"] = gamma_.invariant_factors();
  j["cyclic_orders"] = orders_;
  const BigInt n = order();
  if (n.fits_slong_p()) {
    j["order"] = n.get_si();
  } else {
    j["order"] = n.get_str();
  }
  return j;
}

std::vector<GammaCochain> enumerate_classes(const CohomologyGroup& h, std::uint64_t limit) {
  const BigInt n = h.order();
  if (n > BigInt(std::to_string(limit))) throw EnumerationLimitExceeded(n, limit);
  const auto& orders = h.cyclic_orders();
  std::vector<std::int64_t> coords(orders.size(), 0);
  std::vector<GammaCochain> out;
  out.reserve(n.get_ui());
  while (true) {
    out.push_back(h.representative(coords));
    std::size_t k = coords.size();
    while (k > 0) {
      --k;
      if (++coords[k] < orders[k]) break;
      coords[k] = 0;
      if (k == 0) return out;
    }
    if (coords.empty()) return out;
  }
}

std::optional<GammaCochain> is_cohomologous(const CohomologyGroup& h, const GammaCochain& c1,
                                            const GammaCochain& c2) {
  const CochainComplex& x = *h.complex();
  const GammaCochain diff = c2 - c1;
  for (const auto& v : diff.values) {
    if (!x.vanishes_on_subspace(v, h.degree())) return std::nullopt;
  }
  GammaCochain phi;
  phi.degree = h.degree() - 1;
  phi.moduli = diff.moduli;
  if (h.degree() == 0) {
    if (!diff.is_zero()) return std::nullopt;
    phi.values.assign(diff.moduli.size(), ModVector{});
    return phi;
  }
  const IntMatrix& d = x.coboundary(h.degree() - 1);
  const SNFDecomposition& snf = x.snf(h.degree() - 1);
  for (std::size_t j = 0; j < diff.moduli.size(); ++j) {
    const auto rel = solve_in_image(d, snf, x.restrict_to_free(diff.values[j], h.degree()),
                                    diff.moduli[j]);
    if (!rel) return std::nullopt;
    phi.values.push_back(x.extend_from_free(*rel, h.degree() - 1));
  }
  if (!(differential(x.space(), phi) == diff)) {
    throw std::logic_error("is_cohomologous: witness failed substitution");
  }
  return phi;
}

BigInt hom_kernel_order(const std::vector<std::vector<std::int64_t>>& matrix,
                        const std::vector<std::int64_t>& source_orders,
                        const std::vector<std::int64_t>& target_orders) {
  BigInt source = 1, target = 1;
  for (auto a : source_orders) source *= static_cast<long>(a);
  for (auto b : target_orders) target *= static_cast<long>(b);
  const std::size_t t = target_orders.size();
  const std::size_t s = source_orders.size();
  BigInt cokernel = 1;
  if (t > 0) {
    IntMatrix p(t, t + s);
    for (std::size_t r = 0; r < t; ++r) {
      p.set(r, r, static_cast<long>(target_orders[r]));
      for (std::size_t c = 0; c < s; ++c) p.set(r, t + c, static_cast<long>(matrix.at(r).at(c)));
    }
    for (const auto& d : smith_normal_form(p).diagonal) cokernel *= d;
  }
  const BigInt image = target / cokernel;
  return source / image;
}

GroupHom restriction_map(const CohomologyGroup& source, const CohomologyGroup& target,
                         const SimplexMap& map) {
  GroupHom hom;
  hom.source_orders = source.cyclic_orders();
  hom.target_orders = target.cyclic_orders();
  hom.matrix.assign(hom.target_orders.size(), std::vector<std::int64_t>(hom.source_orders.size(), 0));
  const Triangulation& tgt_space = target.complex()->space();
  for (std::size_t k = 0; k < source.representatives().size(); ++k) {
    const GammaCochain& rep = source.representatives()[k];
    const GammaCochain moved = map.images.empty() ? rep : pullback(map, tgt_space, rep);
    const auto coords = target.coordinates(moved);
    for (std::size_t r = 0; r < coords.size(); ++r) hom.matrix[r][k] = coords[r];
  }
  hom.kernel_order = hom_kernel_order(hom.matrix, hom.source_orders, hom.target_orders);
  hom.image_order = source.order() / hom.kernel_order;
  return hom;
}

IntegralCohomology integral_cohomology(const CochainComplex& complex, int degree) {
  IntegralCohomology h;
  const std::size_t n = complex.free(degree).size();
  const std::size_t upper = complex.snf(degree).rank();
  const auto& lower = complex.snf(degree - 1);
  h.free_rank = n - upper - lower.rank();
  for (const auto& d : lower.diagonal) {
    if (d > 1) h.torsion.push_back(d);
  }
  return h;
}

BigInt universal_coefficient_order(const CochainComplex& complex, int degree, std::int64_t m) {
  auto gcd_m = [m](const BigInt& t) {
    return BigInt(static_cast<unsigned long>(mpz_gcd_ui(nullptr, t.get_mpz_t(), m)));
  };
  const auto here = integral_cohomology(complex, degree);
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(m), here.free_rank);
  for (const auto& t : here.torsion) n *= gcd_m(t);
  if (degree + 1 <= complex.space().dim() + 1) {
    for (const auto& t : integral_cohomology(complex, degree + 1).torsion) n *= gcd_m(t);
  }
  return n;
}

}  // namespace dw
