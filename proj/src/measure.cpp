#include "dw/measure.hpp"

namespace dw {

nlohmann::ordered_json MeasureReport::to_json() const {
  nlohmann::ordered_json j;
  j["mu"] = mu.to_string();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& f : factors) {
    rows.push_back({{"degree", f.degree}, {"order", f.order.get_str()}, {"exponent", f.exponent}});
  }
  j["factors"] = std::move(rows);
  return j;
}

MeasureReport measure_of_pair(const Pair& pair, int p, const FiniteAbelianGroup& gamma) {
  MeasureReport r;
  if (pair.space->empty()) return r;
  const auto complex = make_complex(pair);
  for (int i = 0; i < p; ++i) {
    MeasureFactor f;
    f.degree = i;
    f.order = cohomology(complex, i, gamma).order();
    f.exponent = (p - i) % 2 == 0 ? 1 : -1;
    r.mu *= Rational::power(Rational(f.order), f.exponent);
    r.factors.push_back(std::move(f));
  }
  return r;
}

MeasureReport mu(const TriangulationPtr& m, int p, const FiniteAbelianGroup& gamma) {
  return measure_of_pair(Pair::relative_to_boundary(m), p, gamma);
}

MeasureReport mu_rel(const TriangulationPtr& m, const Subcomplex& n, int p,
                     const FiniteAbelianGroup& gamma) {
  if (n.empty()) return mu(m, p, gamma);
  if (n.intersects(m->boundary())) {
    throw TriangulationError("mu_rel: subcomplex meets the boundary");
  }
  return measure_of_pair(Pair::relative(m, n.united(m->boundary())), p, gamma);
}

nlohmann::ordered_json Lemma1Report::to_json() const {
  nlohmann::ordered_json j;
  j["mu_M"] = mu_M.to_string();
  j["K_order"] = K_order.get_str();
  j["mu_rel"] = mu_rel.to_string();
  j["mu_N"] = mu_N.to_string();
  j["holds"] = holds;
  return j;
}

Lemma1Report verify_lemma1(const TriangulationPtr& m, const Subcomplex& n, int p,
                           const FiniteAbelianGroup& gamma) {
  Lemma1Report r;
  r.mu_M = mu(m, p, gamma).mu;
  r.mu_rel = mu_rel(m, n, p, gamma).mu;
  if (n.empty()) {
    r.K_order = 1;
    r.mu_N = Rational(1);
  } else {
    auto sub = std::make_shared<const Triangulation>(extract(*m, n, "N").complex);
    r.mu_N = measure_of_pair(Pair::absolute(sub), p, gamma).mu;
    const auto src = cohomology(Pair::relative(m, n.united(m->boundary())), p, gamma);
    const auto dst = cohomology(Pair::relative_to_boundary(m), p, gamma);
    r.K_order = restriction_map(src, dst).kernel_order;
  }
  r.holds = r.mu_M == Rational(r.K_order) * r.mu_rel * r.mu_N;
  return r;
}

}  // namespace dw
