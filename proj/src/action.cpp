#include "dw/action.hpp"

#include <random>

namespace dw {

nlohmann::ordered_json ActionSpec::to_json() const {
  if (is_trivial()) return {{"action", "trivial"}};
  return {{"action", "cup_square"}, {"lambda", lambda}};
}

ActionSpec ActionSpec::from_json(const nlohmann::json& j) {
  const auto kind = j.at("action").get<std::string>();
  if (kind == "trivial") return trivial();
  if (kind == "cup_square") return cup_square(j.value("lambda", std::int64_t{1}));
  throw std::invalid_argument("unknown action '" + kind + "'");
}

FundamentalClass FundamentalClass::of(const Triangulation& m) {
  if (!m.oriented()) throw ActionError("fundamental class needs an oriented complex");
  FundamentalClass f;
  for (std::size_t i = 0; i < m.count(m.dim()); ++i) f.terms.emplace_back(i, m.top_sign(i));
  return f;
}

std::map<std::size_t, long> FundamentalClass::boundary(const Triangulation& m) const {
  std::map<std::size_t, long> chain;
  for (const auto& [top, sign] : terms) {
    const Simplex& s = m.simplices(m.dim())[top];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(i));
      long& c = chain[*m.index_of(face)];
      c += (i % 2 == 0 ? sign : -sign);
      if (c == 0) chain.erase(*m.index_of(face));
    }
  }
  return chain;
}

GammaCochain cup_product(const Triangulation& t, const GammaCochain& u, const GammaCochain& v) {
  if (u.moduli.size() != 1 || v.moduli.size() != 1 || u.moduli != v.moduli) {
    throw ActionError("cup_product: operands need one common modulus");
  }
  const std::int64_t n = u.moduli[0];
  GammaCochain out;
  out.degree = u.degree + v.degree;
  out.moduli = u.moduli;
  out.values.assign(1, ModVector(t.count(out.degree), 0));
  const auto& simplices = t.simplices(out.degree);
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const Simplex& s = simplices[i];
    const Simplex front(s.begin(), s.begin() + u.degree + 1);
    const Simplex back(s.begin() + u.degree, s.end());
    const std::int64_t a = u.values[0][*t.index_of(front)];
    if (a == 0) continue;
    out.values[0][i] = mul_mod(a, v.values[0][*t.index_of(back)], n);
  }
  return out;
}

std::int64_t cup_square_pairing(const Triangulation& m, const GammaCochain& p) {
  const GammaCochain sq = cup_product(m, p, p);
  const std::int64_t n = p.moduli[0];
  std::int64_t s = 0;
  for (std::size_t i = 0; i < m.count(m.dim()); ++i) {
    s = mod_reduce(s + m.top_sign(i) * sq.values[0][i], n);
  }
  return s;
}

void check_action_applicable(const Triangulation& m, int p, const FiniteAbelianGroup& gamma,
                             const ActionSpec& spec) {
  if (spec.is_trivial()) return;
  if (!gamma.is_cyclic() || gamma.is_trivial()) {
    throw ActionError("cup_square needs a nontrivial cyclic coefficient group");
  }
  if (m.dim() != 2 * p) throw ActionError("cup_square needs dim = 2p");
  if (!m.oriented()) throw ActionError("cup_square needs an oriented manifold");
}

PhaseSum evaluate_action(const Triangulation& m, const GammaCochain& p, const ActionSpec& spec) {
  if (spec.is_trivial()) return PhaseSum::one();
  if (p.moduli.size() != 1) throw ActionError("cup_square needs a cyclic coefficient group");
  if (m.dim() != 2 * p.degree) throw ActionError("cup_square needs dim = 2p");
  if (!m.oriented()) throw ActionError("cup_square needs an oriented manifold");
  const std::int64_t n = p.moduli[0];
  const std::int64_t s = cup_square_pairing(m, p);
  return PhaseSum::root(n, mul_mod(mod_reduce(spec.lambda, n), s, n));
}

GaugeReport check_gauge_invariance(const Triangulation& m, int p, const FiniteAbelianGroup& gamma,
                                   const ActionSpec& spec, std::size_t trials, std::uint64_t seed,
                                   std::uint64_t limit) {
  GaugeReport r;
  check_action_applicable(m, p, gamma, spec);
  auto t = std::make_shared<const Triangulation>(m);
  const auto h = cohomology(Pair::absolute(t), p, gamma);
  const auto classes = enumerate_classes(h, limit);
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const PhaseSum base = evaluate_action(m, classes[c], spec);
    ++r.classes;
    if (p == 0) continue;  // no gauge transformations
    for (std::size_t k = 0; k < trials; ++k) {
      GammaCochain phi = GammaCochain::zero(m, p - 1, gamma);
      for (std::size_t j = 0; j < phi.moduli.size(); ++j) {
        std::uniform_int_distribution<std::int64_t> pick(0, phi.moduli[j] - 1);
        for (auto& x : phi.values[j]) x = pick(rng);
      }
      ++r.trials;
      const GammaCochain moved = classes[c] + differential(m, phi);
      if (!(evaluate_action(m, moved, spec) == base)) {
        r.holds = false;
        if (!r.failing_class) r.failing_class = c;
      }
    }
  }
  return r;
}

}  // namespace dw
