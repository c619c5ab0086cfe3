#include "dw/tqft.hpp"

namespace dw {

nlohmann::ordered_json phase_report(const PhaseSum& s) {
  const auto z = s.evaluate();
  nlohmann::ordered_json j;
  j["exact"] = s.to_json();
  if (s.is_rational()) j["rational"] = s.constant_term().to_string();
  j["numeric"] = {z.real(), z.imag()};
  return j;
}

// ------------------------------------------------------------------- fields

std::optional<GammaCochain> extend_from_boundary(const CochainComplex& relative,
                                                 const GammaCochain& boundary_values) {
  const Triangulation& m = relative.space();
  const int p = boundary_values.degree;
  const GammaCochain dx = differential(m, boundary_values);
  GammaCochain out = boundary_values;
  for (std::size_t j = 0; j < dx.moduli.size(); ++j) {
    if (!relative.vanishes_on_subspace(dx.values[j], p + 1)) {
      throw std::invalid_argument("boundary data is not a cocycle on the boundary");
    }
    ModVector target = relative.restrict_to_free(dx.values[j], p + 1);
    for (auto& x : target) x = mod_reduce(-x, dx.moduli[j]);
    const auto y = solve_in_image(relative.coboundary(p), relative.snf(p), target, dx.moduli[j]);
    if (!y) return std::nullopt;
    const ModVector full = relative.extend_from_free(*y, p);
    for (std::size_t s = 0; s < full.size(); ++s) {
      out.values[j][s] = (out.values[j][s] + full[s]) % dx.moduli[j];
    }
  }
  if (!differential(m, out).is_zero()) throw std::logic_error("extension is not a cocycle");
  return out;
}

FieldSpace field_space(const TriangulationPtr& m, int p, const FiniteAbelianGroup& gamma,
                       const std::optional<GammaCochain>& boundary_values, std::uint64_t limit) {
  FieldSpace f;
  f.ambient = m;
  if (!boundary_values) {
    f.classes = enumerate_classes(cohomology(Pair::absolute(m), p, gamma), limit);
    return f;
  }
  const auto rel = make_complex(Pair::relative_to_boundary(m));
  const auto h = cohomology(rel, p, gamma);
  if (h.order() > BigInt(std::to_string(limit))) throw EnumerationLimitExceeded(h.order(), limit);
  f.torsor_base = extend_from_boundary(*rel, *boundary_values);
  if (!f.torsor_base) return f;
  for (const auto& c : enumerate_classes(h, limit)) f.classes.push_back(*f.torsor_base + c);
  return f;
}

nlohmann::ordered_json PartitionValue::to_json() const {
  nlohmann::ordered_json j = phase_report(value);
  j["mu"] = mu.to_string();
  j["classes"] = classes;
  return j;
}

PartitionValue partition_closed(const TriangulationPtr& m, int p, const FiniteAbelianGroup& gamma,
                                const ActionSpec& spec, std::uint64_t limit) {
  PartitionValue z;
  if (m->empty()) {
    z.value = PhaseSum::one();
    z.classes = 1;
    return z;
  }
  if (!m->is_closed()) throw TriangulationError("partition_closed: manifold has a boundary");
  check_action_applicable(*m, p, gamma, spec);
  z.mu = mu(m, p, gamma).mu;
  const auto classes = enumerate_classes(cohomology(Pair::absolute(m), p, gamma), limit);
  z.classes = classes.size();
  if (spec.is_trivial()) {
    z.value = PhaseSum::constant(z.mu * Rational(static_cast<long>(classes.size())));
    return z;
  }
  PhaseSum sum;
  for (const auto& c : classes) sum += evaluate_action(*m, c, spec);
  z.value = phase_scale(sum, z.mu);
  return z;
}

// -------------------------------------------------------------- state spaces

nlohmann::ordered_json StateSpace::to_json() const {
  nlohmann::ordered_json j;
  j["boundary"] = boundary->name();
  j["p"] = p;
  j["coefficients"] = gamma.invariant_factors();
  j["dim"] = dim();
  j["ip_scale"] = ip_scale.to_string();
  return j;
}

StateSpacePtr state_space(const TriangulationPtr& n, int p, const FiniteAbelianGroup& gamma,
                          std::uint64_t limit) {
  if (n->empty()) return unit_state_space(p, gamma);
  if (!n->is_closed()) throw TriangulationError("state_space: boundary must be closed");
  auto s = std::make_shared<StateSpace>();
  s->boundary = n;
  s->p = p;
  s->gamma = gamma;
  s->basis = enumerate_classes(cohomology(Pair::absolute(n), p, gamma), limit);
  s->ip_scale = mu(n, p, gamma).mu;
  return s;
}

StateSpacePtr unit_state_space(int p, const FiniteAbelianGroup& gamma) {
  auto s = std::make_shared<StateSpace>();
  s->boundary = std::make_shared<const Triangulation>();
  s->p = p;
  s->gamma = gamma;
  GammaCochain empty;
  empty.degree = p;
  empty.moduli = gamma.invariant_factors();
  empty.values.assign(empty.moduli.size(), ModVector{});
  s->basis.push_back(std::move(empty));
  return s;
}

// ------------------------------------------------------------------ bordisms

nlohmann::ordered_json BordismMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["source"] = source->to_json();
  j["target"] = target->to_json();
  j["mu"] = mu.to_string();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : entries) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& e : row) r.push_back(e.to_json());
    rows.push_back(std::move(r));
  }
  j["entries"] = std::move(rows);
  return j;
}

namespace {

struct ResolvedSide {
  Subcomplex sub;
  std::optional<SimplexMap> map;
};

ResolvedSide resolve_side(const Triangulation& b, const BoundarySide& side) {
  ResolvedSide r{Subcomplex(b), std::nullopt};
  if (!side.space) throw std::invalid_argument("bordism side without a state space");
  if (side.subcomplex.empty()) {
    if (!side.space->is_unit()) {
      throw TriangulationError("bordism: empty side paired with a nonempty state space");
    }
    return r;
  }
  r.sub = b.subcomplex(side.subcomplex);
  if (side.space->is_unit()) {
    if (!r.sub.empty()) throw TriangulationError("bordism: nonempty side paired with the unit");
    return r;
  }
  r.map = chart_map(b, r.sub, *side.space->boundary, side.chart);
  return r;
}

bool same_space(const StateSpace& a, const StateSpace& b) {
  if (&a == &b) return true;
  return a.p == b.p && a.gamma == b.gamma && a.basis == b.basis && a.ip_scale == b.ip_scale &&
         a.boundary->labels() == b.boundary->labels() &&
         a.boundary->simplices(a.boundary->dim()) == b.boundary->simplices(b.boundary->dim());
}

}  // namespace

BordismMatrix bordism_matrix(const TriangulationPtr& b, const BoundarySide& in,
                             const BoundarySide& out, const ActionSpec& spec, std::uint64_t limit) {
  const ResolvedSide rin = resolve_side(*b, in);
  const ResolvedSide rout = resolve_side(*b, out);
  if (rin.sub.intersects(rout.sub)) throw TriangulationError("bordism: in and out sides meet");
  if (!(rin.sub.united(rout.sub) == b->boundary())) {
    throw TriangulationError("bordism: in and out sides must cover the boundary exactly");
  }
  const int p = in.space->p;
  const FiniteAbelianGroup& gamma = in.space->gamma;
  if (out.space->p != p || !(out.space->gamma == gamma)) {
    throw std::invalid_argument("bordism: state spaces use different p or coefficients");
  }
  BordismMatrix x;
  x.source = in.space;
  x.target = out.space;
  if (b->empty()) {
    x.entries.assign(1, std::vector<PhaseSum>(1, PhaseSum::one()));
    return x;
  }
  check_action_applicable(*b, p, gamma, spec);
  x.mu = mu(b, p, gamma).mu;
  const auto rel = make_complex(Pair::relative_to_boundary(b));
  const auto orbit = enumerate_classes(cohomology(rel, p, gamma), limit);

  auto boundary_cochain = [&](const ResolvedSide& side, const GammaCochain& q) {
    if (!side.map) return GammaCochain::zero(*b, p, gamma);
    return pullback(*side.map, *b, q);
  };
  x.entries.assign(in.space->dim(), std::vector<PhaseSum>(out.space->dim()));
  for (std::size_t i = 0; i < in.space->dim(); ++i) {
    const GammaCochain qin = boundary_cochain(rin, in.space->basis[i]);
    for (std::size_t j = 0; j < out.space->dim(); ++j) {
      const GammaCochain q = qin + boundary_cochain(rout, out.space->basis[j]);
      const auto base = extend_from_boundary(*rel, q);
      if (!base) continue;
      if (spec.is_trivial()) {
        x.entries[i][j] = PhaseSum::constant(x.mu * Rational(static_cast<long>(orbit.size())));
        continue;
      }
      PhaseSum sum;
      for (const auto& c : orbit) sum += evaluate_action(*b, *base + c, spec);
      x.entries[i][j] = phase_scale(sum, x.mu);
    }
  }
  return x;
}

PhaseSum trace_glue(const BordismMatrix& x) {
  if (!same_space(*x.source, *x.target)) {
    throw std::invalid_argument("trace_glue: source and target state spaces differ");
  }
  PhaseSum sum;
  for (std::size_t i = 0; i < x.entries.size(); ++i) sum += x.entries[i][i];
  return phase_scale(sum, x.source->ip_scale);
}

BordismMatrix compose_bordisms(const BordismMatrix& a, const BordismMatrix& b) {
  if (!same_space(*a.target, *b.source)) {
    throw std::invalid_argument("compose_bordisms: middle state spaces differ");
  }
  BordismMatrix c;
  c.source = a.source;
  c.target = b.target;
  c.mu = a.mu * b.mu;
  const std::size_t middle = a.target->dim();
  c.entries.assign(a.source->dim(), std::vector<PhaseSum>(b.target->dim()));
  for (std::size_t i = 0; i < a.source->dim(); ++i) {
    for (std::size_t k = 0; k < b.target->dim(); ++k) {
      PhaseSum sum;
      for (std::size_t j = 0; j < middle; ++j) {
        if (a.entries[i][j].is_zero() || b.entries[j][k].is_zero()) continue;
        sum += a.entries[i][j] * b.entries[j][k];
      }
      c.entries[i][k] = phase_scale(sum, a.target->ip_scale);
    }
  }
  return c;
}

bool matrices_approx_equal(const BordismMatrix& a, const BordismMatrix& b, double tol) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].size() != b.entries[i].size()) return false;
    for (std::size_t j = 0; j < a.entries[i].size(); ++j) {
      if (!phase_approx_eq(a.entries[i][j], b.entries[i][j], tol)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------- gluing

nlohmann::ordered_json GluingReport::to_json() const {
  nlohmann::ordered_json j;
  j["mu_M"] = mu_M.to_string();
  j["mu_MN"] = mu_MN.to_string();
  j["mu_N"] = mu_N.to_string();
  j["mu_rel"] = mu_rel.to_string();
  j["K_order"] = K_order.get_str();
  j["lhs"] = phase_report(lhs);
  j["rhs"] = phase_report(rhs);
  j["exact"] = exact;
  j["excision"] = excision;
  j["lemma1"] = lemma1;
  j["pullback_closed"] = pullback_closed;
  j["holds"] = holds;
  return j;
}

GluingReport verify_gluing(const TriangulationPtr& cut, int p, const FiniteAbelianGroup& gamma,
                           const ActionSpec& spec, double tol, std::uint64_t limit) {
  if (!cut->gluing()) throw TriangulationError("verify_gluing: no gluing data");
  const GluingSpec& g = *cut->gluing();
  const GlueResult glued = glue(*cut, g);
  auto m = std::make_shared<const Triangulation>(glued.glued);
  if (!m->is_closed()) throw TriangulationError("verify_gluing: glued manifold is not closed");

  // N is the plus component; the minus component reaches it through the inverse vertex map
  const Subcomplex& plus = cut->subcomplex(g.plus);
  auto n = std::make_shared<const Triangulation>(extract(*cut, plus, "N").complex);
  std::map<std::string, std::string> minus_chart;
  for (const auto& [from, to] : g.vertex_map) minus_chart[to] = from;

  GluingReport r;
  const auto space = state_space(n, p, gamma, limit);
  const BordismMatrix x =
      bordism_matrix(cut, {g.minus, minus_chart, space}, {g.plus, {}, space}, spec, limit);
  r.rhs = trace_glue(x);
  r.lhs = partition_closed(m, p, gamma, spec, limit).value;

  Subcomplex n_in_m(*m);
  for (int k = 0; k <= cut->dim(); ++k) {
    for (std::size_t i = 0; i < cut->count(k); ++i) {
      if (plus.contains(k, i)) n_in_m.insert(k, glued.projection.images[k][i].first);
    }
  }
  const Lemma1Report lemma = verify_lemma1(m, n_in_m, p, gamma);
  r.mu_M = lemma.mu_M;
  r.mu_rel = lemma.mu_rel;
  r.mu_N = lemma.mu_N;
  r.K_order = lemma.K_order;
  r.lemma1 = lemma.holds;
  r.mu_MN = mu(cut, p, gamma).mu;
  r.excision = r.mu_rel == r.mu_MN;

  r.pullback_closed = true;
  const auto classes_of_m = cohomology(Pair::absolute(m), p, gamma);
  for (const auto& c : classes_of_m.representatives()) {
    if (!differential(*cut, pullback(glued.projection, *cut, c)).is_zero()) {
      r.pullback_closed = false;
    }
  }
  r.exact = r.lhs == r.rhs;
  r.holds = spec.is_trivial() ? r.exact : phase_approx_eq(r.lhs, r.rhs, tol);
  return r;
}

DaggerReport dagger_check(const TriangulationPtr& m, int p, const FiniteAbelianGroup& gamma,
                          const ActionSpec& spec, std::uint64_t limit) {
  DaggerReport r;
  r.z = partition_closed(m, p, gamma, spec, limit).value;
  auto reversed = std::make_shared<const Triangulation>(m->reversed());
  r.z_reversed = partition_closed(reversed, p, gamma, spec, limit).value;
  r.holds = r.z_reversed == phase_conj(r.z);
  return r;
}

MonoidalReport monoidal_check(const TriangulationPtr& a, const TriangulationPtr& b, int p,
                              const FiniteAbelianGroup& gamma, const ActionSpec& spec,
                              std::uint64_t limit) {
  MonoidalReport r;
  auto both = std::make_shared<const Triangulation>(disjoint_union(*a, *b));
  r.z_union = partition_closed(both, p, gamma, spec, limit).value;
  r.z_product = partition_closed(a, p, gamma, spec, limit).value *
                partition_closed(b, p, gamma, spec, limit).value;
  r.holds = r.z_union == r.z_product;
  return r;
}

}  // namespace dw
