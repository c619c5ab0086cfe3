#include "dw/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace dw {

// ---------------------------------------------------------------- Subcomplex

Subcomplex::Subcomplex(const Triangulation& t) {
  members_.resize(static_cast<std::size_t>(std::max(t.dim() + 1, 0)));
  for (int k = 0; k <= t.dim(); ++k) members_[k].assign(t.count(k), false);
}

bool Subcomplex::contains(int k, std::size_t index) const {
  if (k < 0 || k >= dims()) return false;
  const auto& m = members_[k];
  return index < m.size() && m[index];
}

void Subcomplex::insert(int k, std::size_t index) { members_.at(k).at(index) = true; }

std::size_t Subcomplex::count(int k) const {
  if (k < 0 || k >= dims()) return 0;
  return static_cast<std::size_t>(std::count(members_[k].begin(), members_[k].end(), true));
}

std::size_t Subcomplex::size() const {
  std::size_t n = 0;
  for (int k = 0; k < dims(); ++k) n += count(k);
  return n;
}

Subcomplex Subcomplex::united(const Subcomplex& o) const {
  if (members_.size() != o.members_.size()) {
    throw std::invalid_argument("Subcomplex::united: different complexes");
  }
  Subcomplex out = *this;
  for (std::size_t k = 0; k < members_.size(); ++k) {
    for (std::size_t i = 0; i < members_[k].size(); ++i) {
      if (o.members_[k][i]) out.members_[k][i] = true;
    }
  }
  return out;
}

bool Subcomplex::intersects(const Subcomplex& o) const {
  for (std::size_t k = 0; k < members_.size() && k < o.members_.size(); ++k) {
    for (std::size_t i = 0; i < members_[k].size(); ++i) {
      if (members_[k][i] && o.members_[k][i]) return true;
    }
  }
  return false;
}

// ------------------------------------------------------------------- helpers

int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) sign = -sign;
    }
  }
  return sign;
}

namespace {

Simplex drop_vertex(const Simplex& s, std::size_t position) {
  Simplex face;
  face.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != position) face.push_back(s[i]);
  }
  return face;
}

void add_closure(const Simplex& sorted, std::vector<std::set<Simplex>>& sets) {
  const std::size_t n = sorted.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) face.push_back(sorted[i]);
    }
    sets[face.size() - 1].insert(std::move(face));
  }
}

}  // namespace

// ------------------------------------------------------------- Triangulation

Triangulation Triangulation::build(
    std::string name, int dim, std::vector<std::string> labels,
    const std::vector<std::vector<int>>& maximal, const std::vector<int>& signs,
    const std::map<std::string, std::vector<std::vector<int>>>& subcomplexes,
    const TriangulationOptions& options) {
  if (dim < -1) throw TriangulationError("dimension must be >= -1");
  if (!signs.empty() && signs.size() != maximal.size()) {
    throw TriangulationError("orientation list length differs from top_simplices");
  }
  Triangulation t;
  t.name_ = std::move(name);
  t.dim_ = dim;
  t.options_ = options;
  t.labels_ = std::move(labels);
  {
    std::set<std::string> seen;
    for (const auto& l : t.labels_) {
      if (!seen.insert(l).second) throw TriangulationError("duplicate vertex label '" + l + "'");
    }
  }
  const int nv = static_cast<int>(t.labels_.size());
  std::vector<std::set<Simplex>> sets(static_cast<std::size_t>(dim + 1));
  std::map<Simplex, int> top_sign;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    const auto& tuple = maximal[i];
    if (tuple.empty() || static_cast<int>(tuple.size()) > dim + 1) {
      throw TriangulationError("simplex size out of range for dimension " + std::to_string(dim));
    }
    for (int v : tuple) {
      if (v < 0 || v >= nv) throw TriangulationError("vertex index out of range");
    }
    const int perm = permutation_sign(tuple);
    if (perm == 0) throw TriangulationError("simplex with repeated vertex");
    Simplex sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    if (static_cast<int>(tuple.size()) == dim + 1) {
      int sign = signs.empty() ? 1 : signs[i];
      if (sign != 1 && sign != -1) throw TriangulationError("orientation entries must be +1 or -1");
      if (!top_sign.emplace(sorted, sign * perm).second) {
        throw TriangulationError("duplicate top simplex");
      }
    } else if (options.check_manifold) {
      throw TriangulationError("maximal simplex below top dimension (complex is not pure)");
    }
    add_closure(sorted, sets);
  }
  if (!sets.empty()) {
    for (int v = 0; v < nv; ++v) sets[0].insert(Simplex{v});
  }
  if (dim < 0 && nv > 0) throw TriangulationError("vertices given for an empty complex");

  t.simplices_.resize(sets.size());
  t.lookup_.resize(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    t.simplices_[k].assign(sets[k].begin(), sets[k].end());
    for (std::size_t i = 0; i < t.simplices_[k].size(); ++i) {
      t.lookup_[k].emplace(t.simplices_[k][i], i);
    }
  }
  if (dim >= 0) {
    for (const auto& s : t.simplices_[dim]) {
      t.top_signs_.push_back(options.oriented ? top_sign.at(s) : 1);
    }
  }
  t.finalize(subcomplexes);
  t.validate();
  return t;
}

void Triangulation::finalize(
    const std::map<std::string, std::vector<std::vector<int>>>& subcomplexes) {
  boundary_ = Subcomplex(*this);
  if (dim_ >= 1) {
    facet_cofaces_.assign(count(dim_ - 1), {});
    const auto& tops = simplices_[dim_];
    for (std::size_t i = 0; i < tops.size(); ++i) {
      for (std::size_t pos = 0; pos < tops[i].size(); ++pos) {
        facet_cofaces_[lookup_[dim_ - 1].at(drop_vertex(tops[i], pos))].push_back(i);
      }
    }
    std::vector<std::set<Simplex>> sets(static_cast<std::size_t>(dim_ + 1));
    for (std::size_t f = 0; f < facet_cofaces_.size(); ++f) {
      if (facet_cofaces_[f].size() == 1) add_closure(simplices_[dim_ - 1][f], sets);
    }
    for (std::size_t k = 0; k < sets.size(); ++k) {
      for (const auto& s : sets[k]) boundary_.insert(static_cast<int>(k), lookup_[k].at(s));
    }
  }
  for (const auto& [name, gens] : subcomplexes) {
    std::vector<std::set<Simplex>> sets(static_cast<std::size_t>(std::max(dim_ + 1, 0)));
    for (const auto& g : gens) {
      Simplex sorted = g;
      std::sort(sorted.begin(), sorted.end());
      if (sorted.empty() || static_cast<int>(sorted.size()) > dim_ + 1 ||
          !index_of(sorted)) {
        throw TriangulationError("subcomplex '" + name +
                                 "' lists a simplex that is not in the complex");
      }
      add_closure(sorted, sets);
    }
    Subcomplex sub(*this);
    for (std::size_t k = 0; k < sets.size(); ++k) {
      for (const auto& s : sets[k]) sub.insert(static_cast<int>(k), lookup_[k].at(s));
    }
    subcomplexes_[name] = std::move(sub);
  }
}

void Triangulation::validate() const {
  if (dim_ < 1) return;
  if (options_.check_manifold) {
    for (std::size_t f = 0; f < facet_cofaces_.size(); ++f) {
      const std::size_t n = facet_cofaces_[f].size();
      if (n != 1 && n != 2) {
        throw TriangulationError("non-manifold face incidence: a " + std::to_string(dim_ - 1) +
                                 "-face lies in " + std::to_string(n) + " top simplices");
      }
    }
  }
  if (options_.oriented && options_.check_orientation) {
    for (std::size_t f = 0; f < facet_cofaces_.size(); ++f) {
      const auto& cof = facet_cofaces_[f];
      if (cof.size() != 2) continue;
      if (induced_sign(cof[0], f) != -induced_sign(cof[1], f)) {
        throw TriangulationError("orientation incoherence across an interior face of '" +
                                 name_ + "'");
      }
    }
  }
}

std::optional<int> Triangulation::vertex_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

const std::vector<Simplex>& Triangulation::simplices(int k) const {
  static const std::vector<Simplex> none;
  if (k < 0 || k > dim_) return none;
  return simplices_[k];
}

std::size_t Triangulation::total_simplices() const {
  std::size_t n = 0;
  for (const auto& s : simplices_) n += s.size();
  return n;
}

std::optional<std::size_t> Triangulation::index_of(const Simplex& s) const {
  const int k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k > dim_) return std::nullopt;
  auto it = lookup_[k].find(s);
  if (it == lookup_[k].end()) return std::nullopt;
  return it->second;
}

bool Triangulation::has_subcomplex(const std::string& name) const {
  return subcomplexes_.count(name) > 0;
}

const Subcomplex& Triangulation::subcomplex(const std::string& name) const {
  auto it = subcomplexes_.find(name);
  if (it == subcomplexes_.end()) {
    throw TriangulationError("no subcomplex named '" + name + "' in '" + name_ + "'");
  }
  return it->second;
}

long Triangulation::euler_characteristic() const {
  long chi = 0;
  for (int k = 0; k <= dim_; ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(count(k));
  return chi;
}

Triangulation Triangulation::reversed() const {
  Triangulation t = *this;
  for (int& s : t.top_signs_) s = -s;
  return t;
}

Triangulation Triangulation::with_flipped_sign(std::size_t top_index) const {
  Triangulation t = *this;
  t.top_signs_.at(top_index) = -t.top_signs_.at(top_index);
  t.options_.check_orientation = false;
  t.options_.check_manifold = false;
  return t;
}

Triangulation Triangulation::with_name(std::string name) const {
  Triangulation t = *this;
  t.name_ = std::move(name);
  return t;
}

Triangulation Triangulation::with_gluing(GluingSpec spec) const {
  Triangulation t = *this;
  t.gluing_ = std::move(spec);
  return t;
}

Triangulation Triangulation::with_chart(const std::string& subcomplex,
                                        std::map<std::string, std::string> vertex_map) const {
  Triangulation t = *this;
  t.charts_[subcomplex] = std::move(vertex_map);
  return t;
}

Triangulation Triangulation::with_subcomplex(const std::string& name, Subcomplex sub) const {
  Triangulation t = *this;
  t.subcomplexes_[name] = std::move(sub);
  return t;
}

int Triangulation::induced_sign(std::size_t top, std::size_t face) const {
  const Simplex& s = simplices_[dim_][top];
  const Simplex& f = simplices_[dim_ - 1][face];
  std::size_t pos = 0;
  while (pos < f.size() && s[pos] == f[pos]) ++pos;
  return top_signs_[top] * (pos % 2 == 0 ? 1 : -1);
}

std::vector<std::size_t> Triangulation::cofaces_of_facet(std::size_t face) const {
  if (dim_ < 1) return {};
  return facet_cofaces_.at(face);
}

// --------------------------------------------------------------------- Pair

Pair Pair::absolute(TriangulationPtr t) {
  Subcomplex empty(*t);
  return {std::move(t), std::move(empty)};
}

Pair Pair::relative_to_boundary(TriangulationPtr t) {
  Subcomplex b = t->boundary();
  return {std::move(t), std::move(b)};
}

Pair Pair::relative(TriangulationPtr t, Subcomplex sub) {
  return {std::move(t), std::move(sub)};
}

std::vector<std::size_t> free_simplices(const Pair& pair, int k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pair.space->count(k); ++i) {
    if (!pair.subspace.contains(k, i)) out.push_back(i);
  }
  return out;
}

IntMatrix coboundary_matrix(const Pair& pair, int k) {
  const Triangulation& t = *pair.space;
  const auto cols = free_simplices(pair, k);
  const auto rows = free_simplices(pair, k + 1);
  std::vector<long> col_pos(t.count(k), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) col_pos[cols[j]] = static_cast<long>(j);
  IntMatrix d(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Simplex& s = t.simplices(k + 1)[rows[r]];
    for (std::size_t i = 0; i < s.size(); ++i) {
      const long c = col_pos[*t.index_of(drop_vertex(s, i))];
      if (c >= 0) d.add(r, static_cast<std::size_t>(c), i % 2 == 0 ? 1 : -1);
    }
  }
  return d;
}

// ------------------------------------------------------ derived constructions

namespace {

std::vector<std::vector<int>> all_simplices_in(const Triangulation& t, const Subcomplex& sub) {
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= t.dim(); ++k) {
    for (std::size_t i = 0; i < t.count(k); ++i) {
      if (sub.contains(k, i)) out.push_back(t.simplices(k)[i]);
    }
  }
  return out;
}

// Extracts `sub` as a complex; `top_sign` gives orientation signs for the
// extracted top simplices (indexed by the parent's simplex index).
Extraction extract_with(const Triangulation& t, const Subcomplex& sub, const std::string& name,
                        bool oriented, const std::function<int(std::size_t)>& top_sign) {
  std::vector<int> new_index(t.vertex_count(), -1);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    if (sub.contains(0, v)) {
      new_index[v] = static_cast<int>(labels.size());
      labels.push_back(t.labels()[v]);
    }
  }
  int dim = -1;
  for (int k = 0; k <= t.dim(); ++k) {
    if (sub.count(k) > 0) dim = k;
  }
  std::vector<std::vector<int>> maximal;
  std::vector<int> signs;
  for (int k = 0; k <= dim; ++k) {
    for (std::size_t i = 0; i < t.count(k); ++i) {
      if (!sub.contains(k, i)) continue;
      std::vector<int> s;
      for (int v : t.simplices(k)[i]) s.push_back(new_index[v]);
      maximal.push_back(std::move(s));
      signs.push_back(k == dim ? top_sign(i) : 1);
    }
  }
  TriangulationOptions opts;
  opts.oriented = oriented;
  opts.check_manifold = false;
  opts.check_orientation = oriented;
  Extraction out{Triangulation::build(name, dim, std::move(labels), maximal, signs, {}, opts), {}};
  out.inclusion.images.resize(static_cast<std::size_t>(std::max(dim + 1, 0)));
  std::vector<int> old_index(out.complex.vertex_count());
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    if (new_index[v] >= 0) old_index[new_index[v]] = static_cast<int>(v);
  }
  for (int k = 0; k <= dim; ++k) {
    for (const auto& s : out.complex.simplices(k)) {
      Simplex parent;
      for (int v : s) parent.push_back(old_index[v]);
      out.inclusion.images[k].emplace_back(*t.index_of(parent), 1);
    }
  }
  return out;
}

}  // namespace

Extraction extract(const Triangulation& t, const Subcomplex& sub, const std::string& name) {
  int dim = -1;
  for (int k = 0; k <= t.dim(); ++k) {
    if (sub.count(k) > 0) dim = k;
  }
  const bool oriented = t.oriented() && dim == t.dim();
  return extract_with(t, sub, name, oriented,
                      [&](std::size_t i) { return oriented ? t.top_sign(i) : 1; });
}

BoundaryResult boundary_of(const Triangulation& t) {
  const Subcomplex& b = t.boundary();
  auto sign = [&](std::size_t face) {
    if (!t.oriented()) return 1;
    return t.induced_sign(t.cofaces_of_facet(face).front(), face);
  };
  Extraction e = extract_with(t, b, t.name() + ".boundary", t.oriented() && !b.empty(), sign);
  return {std::move(e.complex), std::move(e.inclusion), connected_components(t, b)};
}

std::vector<Subcomplex> connected_components(const Triangulation& t, const Subcomplex& sub) {
  std::vector<int> parent(t.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < t.count(1); ++i) {
    if (!sub.contains(1, i)) continue;
    const auto& e = t.simplices(1)[i];
    int a = find(e[0]), b = find(e[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, Subcomplex> by_root;
  for (int k = 0; k <= t.dim(); ++k) {
    for (std::size_t i = 0; i < t.count(k); ++i) {
      if (!sub.contains(k, i)) continue;
      const int root = find(t.simplices(k)[i][0]);
      auto it = by_root.try_emplace(root, t).first;
      it->second.insert(k, i);
    }
  }
  std::vector<Subcomplex> out;
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  return out;
}

GlueResult glue(const Triangulation& cut, const GluingSpec& spec) {
  if (spec.plus.empty() && spec.minus.empty() && spec.vertex_map.empty()) {
    GlueResult r{cut, {}};
    r.projection.images.resize(static_cast<std::size_t>(std::max(cut.dim() + 1, 0)));
    for (int k = 0; k <= cut.dim(); ++k) {
      for (std::size_t i = 0; i < cut.count(k); ++i) r.projection.images[k].emplace_back(i, 1);
    }
    return r;
  }
  const Subcomplex& plus = cut.subcomplex(spec.plus);
  const Subcomplex& minus = cut.subcomplex(spec.minus);
  if (plus.intersects(minus)) throw TriangulationError("glue: plus and minus components meet");

  // vertex bijection plus -> minus
  std::vector<int> partner(cut.vertex_count(), -1);
  std::set<int> hit;
  for (const auto& [from, to] : spec.vertex_map) {
    auto a = cut.vertex_index(from);
    auto b = cut.vertex_index(to);
    if (!a || !b) throw TriangulationError("glue: vertex_map names an unknown vertex");
    if (!plus.contains(0, *a) || !minus.contains(0, *b)) {
      throw TriangulationError("glue: vertex_map must send plus vertices to minus vertices");
    }
    if (!hit.insert(*b).second) throw TriangulationError("glue: vertex_map is not injective");
    partner[*a] = *b;
  }
  if (spec.vertex_map.size() != plus.count(0) || hit.size() != minus.count(0)) {
    throw TriangulationError("glue: vertex_map is not a bijection between the components");
  }
  for (int k = 0; k <= cut.dim(); ++k) {
    if (plus.count(k) != minus.count(k)) {
      throw TriangulationError("glue: components have different simplex counts");
    }
    for (std::size_t i = 0; i < cut.count(k); ++i) {
      if (!plus.contains(k, i)) continue;
      Simplex image;
      for (int v : cut.simplices(k)[i]) image.push_back(partner[v]);
      if (!std::is_sorted(image.begin(), image.end())) {
        throw TriangulationError("glue: vertex_map does not preserve the vertex order");
      }
      auto idx = cut.index_of(image);
      if (!idx || !minus.contains(k, *idx)) {
        throw TriangulationError("glue: vertex_map does not carry plus simplices onto minus");
      }
    }
  }
  if (cut.options().check_manifold && cut.dim() >= 1) {
    const Subcomplex both = plus.united(minus);
    for (int k = 0; k <= cut.dim(); ++k) {
      for (std::size_t i = 0; i < cut.count(k); ++i) {
        if (both.contains(k, i) && !cut.boundary().contains(k, i)) {
          throw TriangulationError("glue: glued components must lie in the boundary");
        }
        if (!cut.boundary().contains(k, i) || both.contains(k, i)) continue;
        for (int v : cut.simplices(k)[i]) {
          if (both.contains(0, static_cast<std::size_t>(v))) {
            throw TriangulationError("glue: glued components touch the retained boundary");
          }
        }
      }
    }
  }

  // minus vertices are replaced by their plus partners
  std::vector<int> source_of(cut.vertex_count(), -1);
  for (std::size_t v = 0; v < cut.vertex_count(); ++v) {
    if (partner[v] >= 0) source_of[partner[v]] = static_cast<int>(v);
  }
  std::vector<int> new_index(cut.vertex_count(), -1);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < cut.vertex_count(); ++v) {
    if (source_of[v] >= 0) continue;
    new_index[v] = static_cast<int>(labels.size());
    labels.push_back(cut.labels()[v]);
  }
  for (std::size_t v = 0; v < cut.vertex_count(); ++v) {
    if (source_of[v] >= 0) new_index[v] = new_index[source_of[v]];
  }
  auto image_of = [&](const Simplex& s) {
    std::vector<int> out;
    for (int v : s) out.push_back(new_index[v]);
    return out;
  };

  for (int k = 0; k <= cut.dim(); ++k) {
    std::set<Simplex> distinct;
    for (const auto& s : cut.simplices(k)) {
      auto img = image_of(s);
      if (permutation_sign(img) == 0) throw TriangulationError("glue: degenerate simplex");
      std::sort(img.begin(), img.end());
      distinct.insert(img);
    }
    if (distinct.size() != cut.count(k) - minus.count(k)) {
      throw TriangulationError("glue: identification merges distinct simplices");
    }
  }

  std::vector<std::vector<int>> maximal;
  std::vector<int> signs;
  for (std::size_t i = 0; i < cut.count(cut.dim()); ++i) {
    maximal.push_back(image_of(cut.simplices(cut.dim())[i]));
    signs.push_back(cut.top_sign(i));
  }
  std::map<std::string, std::vector<std::vector<int>>> subs;
  for (const auto& [name, sub] : cut.subcomplexes()) {
    auto& list = subs[name];
    for (const auto& s : all_simplices_in(cut, sub)) list.push_back(image_of(s));
  }
  GlueResult r{Triangulation::build(cut.name() + ".glued", cut.dim(), labels, maximal, signs,
                                    subs, cut.options()),
               {}};
  r.projection.images.resize(static_cast<std::size_t>(cut.dim() + 1));
  for (int k = 0; k <= cut.dim(); ++k) {
    for (const auto& s : cut.simplices(k)) {
      auto img = image_of(s);
      const int sign = permutation_sign(img);
      std::sort(img.begin(), img.end());
      r.projection.images[k].emplace_back(*r.glued.index_of(img), sign);
    }
  }
  return r;
}

Triangulation disjoint_union(const Triangulation& a, const Triangulation& b) {
  if (b.empty()) return a;
  if (a.empty()) return b;
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("1." + l);
  for (const auto& l : b.labels()) labels.push_back("2." + l);
  const int offset = static_cast<int>(a.vertex_count());
  std::vector<std::vector<int>> maximal;
  std::vector<int> signs;
  auto add_tops = [&](const Triangulation& t, int shift) {
    for (std::size_t i = 0; i < t.count(t.dim()); ++i) {
      std::vector<int> s;
      for (int v : t.simplices(t.dim())[i]) s.push_back(v + shift);
      maximal.push_back(std::move(s));
      signs.push_back(t.top_sign(i));
    }
  };
  add_tops(a, 0);
  add_tops(b, offset);
  std::map<std::string, std::vector<std::vector<int>>> subs;
  for (const auto& [name, sub] : a.subcomplexes()) subs["1." + name] = all_simplices_in(a, sub);
  for (const auto& [name, sub] : b.subcomplexes()) {
    auto& list = subs["2." + name];
    for (auto s : all_simplices_in(b, sub)) {
      for (int& v : s) v += offset;
      list.push_back(std::move(s));
    }
  }
  TriangulationOptions opts;
  opts.oriented = a.oriented() && b.oriented();
  opts.check_manifold = a.options().check_manifold && b.options().check_manifold &&
                        a.dim() == b.dim();
  opts.check_orientation = a.options().check_orientation && b.options().check_orientation;
  if (a.dim() != b.dim()) {
    throw TriangulationError("disjoint_union: dimensions differ");
  }
  return Triangulation::build(a.name() + "+" + b.name(), a.dim(), labels, maximal, signs, subs,
                              opts);
}

namespace {

// Lattice paths from (0,0) to (p,q); each step is false for x, true for y.
void shuffles(std::size_t p, std::size_t q, std::vector<bool>& path,
              std::vector<std::vector<bool>>& out) {
  if (p == 0 && q == 0) {
    out.push_back(path);
    return;
  }
  if (p > 0) {
    path.push_back(false);
    shuffles(p - 1, q, path, out);
    path.pop_back();
  }
  if (q > 0) {
    path.push_back(true);
    shuffles(p, q - 1, path, out);
    path.pop_back();
  }
}

}  // namespace

Triangulation product(const Triangulation& a, const Triangulation& b) {
  const int nb = static_cast<int>(b.vertex_count());
  std::vector<std::string> labels;
  for (const auto& x : a.labels()) {
    for (const auto& y : b.labels()) labels.push_back(x + "|" + y);
  }
  auto vertex = [&](int x, int y) { return x * nb + y; };

  // staircase simplices of sigma x tau, each with its shuffle sign
  auto prism = [&](const Simplex& s, const Simplex& t,
                   std::vector<std::pair<std::vector<int>, int>>& out) {
    std::vector<std::vector<bool>> paths;
    std::vector<bool> path;
    shuffles(s.size() - 1, t.size() - 1, path, paths);
    for (const auto& steps : paths) {
      std::size_t i = 0, j = 0, ys = 0;
      int inversions = 0;
      std::vector<int> verts{vertex(s[0], t[0])};
      for (bool y : steps) {
        if (y) {
          ++j;
          ++ys;
        } else {
          ++i;
          inversions += static_cast<int>(ys);
        }
        verts.push_back(vertex(s[i], t[j]));
      }
      out.emplace_back(std::move(verts), inversions % 2 == 0 ? 1 : -1);
    }
  };

  std::vector<std::vector<int>> maximal;
  std::vector<int> signs;
  const bool oriented = a.oriented() && b.oriented();
  if (a.dim() >= 0 && b.dim() >= 0) {
    for (std::size_t i = 0; i < a.count(a.dim()); ++i) {
      for (std::size_t j = 0; j < b.count(b.dim()); ++j) {
        std::vector<std::pair<std::vector<int>, int>> cells;
        prism(a.simplices(a.dim())[i], b.simplices(b.dim())[j], cells);
        for (auto& [verts, sign] : cells) {
          maximal.push_back(std::move(verts));
          signs.push_back(oriented ? sign * a.top_sign(i) * b.top_sign(j) : 1);
        }
      }
    }
  }
  std::map<std::string, std::vector<std::vector<int>>> subs;
  auto sub_product = [&](const Triangulation& x, const Subcomplex& sx, const Triangulation& y,
                         const Subcomplex* sy, bool left) {
    std::vector<std::vector<int>> out;
    for (const auto& s : all_simplices_in(x, sx)) {
      const auto& others = sy ? all_simplices_in(y, *sy) : y.simplices(y.dim());
      for (const auto& t : others) {
        std::vector<std::pair<std::vector<int>, int>> cells;
        left ? prism(s, t, cells) : prism(t, s, cells);
        for (auto& c : cells) out.push_back(std::move(c.first));
      }
    }
    return out;
  };
  for (const auto& [name, sub] : a.subcomplexes()) {
    subs[name + "|*"] = sub_product(a, sub, b, nullptr, true);
  }
  for (const auto& [name, sub] : b.subcomplexes()) {
    subs["*|" + name] = sub_product(b, sub, a, nullptr, false);
  }
  TriangulationOptions opts;
  opts.oriented = oriented;
  opts.check_manifold = a.options().check_manifold && b.options().check_manifold;
  opts.check_orientation = true;
  const int dim = (a.dim() < 0 || b.dim() < 0) ? -1 : a.dim() + b.dim();
  if (dim < 0) labels.clear();
  return Triangulation::build(a.name() + "x" + b.name(), dim, labels, maximal, signs, subs, opts);
}

SimplexMap chart_map(const Triangulation& t, const Subcomplex& component,
                     const Triangulation& reference,
                     const std::map<std::string, std::string>& chart) {
  std::vector<int> to_ref(t.vertex_count(), -1);
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    if (!component.contains(0, v)) continue;
    const std::string& label = t.labels()[v];
    std::string target = label;
    if (!chart.empty()) {
      auto it = chart.find(label);
      if (it == chart.end()) {
        throw TriangulationError("chart does not cover vertex '" + label + "'");
      }
      target = it->second;
    }
    auto idx = reference.vertex_index(target);
    if (!idx) throw TriangulationError("chart target '" + target + "' not in reference");
    to_ref[v] = *idx;
  }
  SimplexMap m;
  m.images.resize(static_cast<std::size_t>(std::max(t.dim() + 1, 0)));
  for (int k = 0; k <= t.dim(); ++k) {
    m.images[k].assign(t.count(k), {SIZE_MAX, 0});
    std::size_t covered = 0;
    for (std::size_t i = 0; i < t.count(k); ++i) {
      if (!component.contains(k, i)) continue;
      std::vector<int> img;
      for (int v : t.simplices(k)[i]) img.push_back(to_ref[v]);
      const int sign = permutation_sign(img);
      if (sign == 0) throw TriangulationError("chart collapses a simplex");
      std::sort(img.begin(), img.end());
      auto idx = reference.index_of(img);
      if (!idx) throw TriangulationError("chart image is not a simplex of the reference");
      m.images[k][i] = {*idx, sign};
      ++covered;
    }
    if (covered != reference.count(k)) {
      throw TriangulationError("chart is not an isomorphism onto the reference");
    }
  }
  for (int k = t.dim() + 1; k <= reference.dim(); ++k) {
    if (reference.count(k) > 0) {
      throw TriangulationError("chart is not an isomorphism onto the reference");
    }
  }
  return m;
}

}  // namespace dw
