#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dw/snf.hpp"
#include "json.hpp"

namespace dw {

/// Vertex indices in increasing global order.
using Simplex = std::vector<int>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TriangulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Triangulation;

/// A closed set of simplices of a fixed Triangulation, as per-dimension
/// membership masks.
class Subcomplex {
 public:
  Subcomplex() = default;
  explicit Subcomplex(const Triangulation& t);

  bool contains(int k, std::size_t index) const;
  void insert(int k, std::size_t index);
  std::size_t count(int k) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  int dims() const { return static_cast<int>(members_.size()); }

  Subcomplex united(const Subcomplex& o) const;
  bool intersects(const Subcomplex& o) const;
  bool operator==(const Subcomplex& o) const { return members_ == o.members_; }

 private:
  std::vector<std::vector<bool>> members_;
};

/// Identifies the plus component with the minus component along vertex_map
/// (plus label -> minus label).
struct GluingSpec {
  std::string plus;
  std::string minus;
  std::map<std::string, std::string> vertex_map;
};

struct TriangulationOptions {
  bool oriented = false;
  bool check_manifold = true;
  bool check_orientation = true;
};

/// Finite simplicial complex with a global vertex order (the order of the
/// vertex list), optional orientation of its top simplices and named
/// subcomplexes. Immutable once built.
class Triangulation {
 public:
  Triangulation() = default;

  /// Builds the closure of `maximal` (vertex-index tuples in any order).
  /// A top simplex's orientation is signs[i] times the sign of the
  /// permutation sorting its tuple. `subcomplexes` lists generating simplices
  /// whose closure forms each named subcomplex.
  static Triangulation build(std::string name, int dim, std::vector<std::string> labels,
                             const std::vector<std::vector<int>>& maximal,
                             const std::vector<int>& signs,
                             const std::map<std::string, std::vector<std::vector<int>>>&
                                 subcomplexes,
                             const TriangulationOptions& options);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  bool oriented() const { return options_.oriented; }
  const TriangulationOptions& options() const { return options_; }

  std::size_t vertex_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> vertex_index(const std::string& label) const;

  /// k-simplices, sorted lexicographically; empty for k outside [0, dim].
  const std::vector<Simplex>& simplices(int k) const;
  std::size_t count(int k) const { return simplices(k).size(); }
  std::size_t total_simplices() const;
  std::optional<std::size_t> index_of(const Simplex& s) const;

  /// Orientation sign (+1/-1) of top simplex i relative to its sorted tuple.
  int top_sign(std::size_t i) const { return top_signs_.at(i); }
  const std::vector<int>& top_signs() const { return top_signs_; }

  const Subcomplex& boundary() const { return boundary_; }
  bool is_closed() const { return boundary_.empty(); }
  bool empty() const { return labels_.empty(); }

  bool has_subcomplex(const std::string& name) const;
  const Subcomplex& subcomplex(const std::string& name) const;
  const std::map<std::string, Subcomplex>& subcomplexes() const { return subcomplexes_; }

  const std::optional<GluingSpec>& gluing() const { return gluing_; }
  const std::map<std::string, std::map<std::string, std::string>>& charts() const {
    return charts_;
  }

  long euler_characteristic() const;

  /// Same complex with every top simplex's orientation reversed.
  Triangulation reversed() const;
  /// Copy with top_sign(i) flipped for one simplex, validation disabled.
  Triangulation with_flipped_sign(std::size_t top_index) const;

  Triangulation with_name(std::string name) const;
  Triangulation with_gluing(GluingSpec spec) const;
  Triangulation with_chart(const std::string& subcomplex,
                           std::map<std::string, std::string> vertex_map) const;
  Triangulation with_subcomplex(const std::string& name, Subcomplex sub) const;

  /// Induced boundary orientation of (dim-1)-face `face` from top simplex
  /// `top`: top_sign * (-1)^position of the omitted vertex.
  int induced_sign(std::size_t top, std::size_t face) const;
  /// Indices of the top simplices having `face` (a (dim-1)-simplex) as a face.
  std::vector<std::size_t> cofaces_of_facet(std::size_t face) const;

 private:
  void finalize(const std::map<std::string, std::vector<std::vector<int>>>& subcomplexes);
  void validate() const;

  std::string name_;
  int dim_ = -1;
  TriangulationOptions options_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> lookup_;
  std::vector<int> top_signs_;
  std::vector<std::vector<std::size_t>> facet_cofaces_;
  Subcomplex boundary_;
  std::map<std::string, Subcomplex> subcomplexes_;
  std::optional<GluingSpec> gluing_;
  std::map<std::string, std::map<std::string, std::string>> charts_;
};

using TriangulationPtr = std::shared_ptr<const Triangulation>;

/// Simplicial map X -> Y: images[k][i] is the index of the image of the k-simplex
/// i of X in Y and the sign of the permutation relating the two vertex orders.
struct SimplexMap {
  std::vector<std::vector<std::pair<std::size_t, int>>> images;
};

/// A space with a closed subspace; cochains of the pair vanish on the subspace.
struct Pair {
  TriangulationPtr space;
  Subcomplex subspace;

  static Pair absolute(TriangulationPtr t);
  static Pair relative_to_boundary(TriangulationPtr t);
  static Pair relative(TriangulationPtr t, Subcomplex sub);
};

/// Sign of the permutation that sorts `v` (0 if v has repeated entries).
int permutation_sign(std::vector<int> v);

Triangulation parse_triangulation(const nlohmann::json& document);
Triangulation load_triangulation(const std::string& path);
nlohmann::ordered_json to_json(const Triangulation& t);

/// The subcomplex as a standalone triangulation (vertex order and labels
/// inherited) together with its inclusion map.
struct Extraction {
  Triangulation complex;
  SimplexMap inclusion;
};
Extraction extract(const Triangulation& t, const Subcomplex& sub, const std::string& name);

struct BoundaryResult {
  Triangulation boundary;  // oriented by the induced orientation when t is
  SimplexMap inclusion;
  std::vector<Subcomplex> components;  // connected components, in t's indexing
};
BoundaryResult boundary_of(const Triangulation& t);

/// Connected components of a subcomplex (by shared vertices), ordered by
/// their smallest vertex.
std::vector<Subcomplex> connected_components(const Triangulation& t, const Subcomplex& sub);

struct GlueResult {
  Triangulation glued;
  SimplexMap projection;  // pi : M_N -> M
};
GlueResult glue(const Triangulation& cut, const GluingSpec& spec);

Triangulation disjoint_union(const Triangulation& a, const Triangulation& b);

/// Staircase (shuffle) triangulation of the product. Vertex (x, y) is labelled
/// "x|y" and ordered x-major. For each named subcomplex S of a, "S|*" names
/// S x b; for each named subcomplex T of b, "*|T" names a x T.
Triangulation product(const Triangulation& a, const Triangulation& b);

/// Full simplex indices of the k-simplices outside the subspace, increasing.
std::vector<std::size_t> free_simplices(const Pair& pair, int k);

/// d : C^k -> C^{k+1} of the pair; rows/columns restricted to simplices
/// outside the subspace, in increasing simplex order.
IntMatrix coboundary_matrix(const Pair& pair, int k);

/// Simplex map from the subcomplex `component` of `t` to `reference`, sending
/// vertices via `chart` (labels of t -> labels of reference). The map is
/// indexed by t's simplex indices; entries for simplices outside the
/// component are left as {SIZE_MAX, 0}.
SimplexMap chart_map(const Triangulation& t, const Subcomplex& component,
                     const Triangulation& reference,
                     const std::map<std::string, std::string>& chart);

}  // namespace dw
