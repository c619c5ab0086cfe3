#include "dw/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace dw::oracle {

namespace {

// Gamma as a single mixed-radix index.
struct Group {
  std::vector<std::int64_t> moduli;
  std::vector<std::int64_t> strides;
  int size = 1;
  std::vector<std::vector<std::uint8_t>> sum;
  std::vector<std::uint8_t> neg;

  explicit Group(const FiniteAbelianGroup& g) : moduli(g.invariant_factors()) {
    std::int64_t n = 1;
    for (auto m : moduli) {
      strides.push_back(n);
      n *= m;
    }
    if (n > 255) throw TooLarge("oracle: coefficient group too large");
    size = static_cast<int>(n);
    sum.assign(size, std::vector<std::uint8_t>(size));
    neg.assign(size, 0);
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        int c = 0;
        for (std::size_t j = 0; j < moduli.size(); ++j) {
          c += static_cast<int>(((component(a, j) + component(b, j)) % moduli[j]) * strides[j]);
        }
        sum[a][b] = static_cast<std::uint8_t>(c);
      }
      int c = 0;
      for (std::size_t j = 0; j < moduli.size(); ++j) {
        c += static_cast<int>(((moduli[j] - component(a, j)) % moduli[j]) * strides[j]);
      }
      neg[a] = static_cast<std::uint8_t>(c);
    }
  }
  std::int64_t component(int a, std::size_t j) const { return (a / strides[j]) % moduli[j]; }
  std::uint8_t signed_value(std::uint8_t a, int sign) const { return sign > 0 ? a : neg[a]; }
};

// Positions of the free k-simplices in colex order (by largest vertex first),
// so coboundary constraints close early during backtracking.
std::vector<long> free_positions(const Pair& pair, int k) {
  const auto& simplices = pair.space->simplices(k);
  std::vector<std::size_t> order(simplices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(simplices[a].rbegin(), simplices[a].rend(),
                                        simplices[b].rbegin(), simplices[b].rend());
  });
  std::vector<long> pos(simplices.size(), -1);
  long next = 0;
  for (std::size_t i : order) {
    if (!pair.subspace.contains(k, i)) pos[i] = next++;
  }
  return pos;
}

std::string key_of(const Cochain& c) { return std::string(c.begin(), c.end()); }

struct Face {
  long position;
  int sign;
};

}  // namespace

Enumeration enumerate(const Pair& pair, int degree, const FiniteAbelianGroup& gamma,
                      std::uint64_t guard) {
  const Triangulation& t = *pair.space;
  const Group g(gamma);
  const auto pos = free_positions(pair, degree);
  const long n = static_cast<long>(std::count_if(pos.begin(), pos.end(), [](long x) { return x >= 0; }));

  // constraints d c (s) = 0, each checked once its last free face is assigned
  std::vector<std::vector<std::vector<Face>>> triggered(static_cast<std::size_t>(n));
  for (const auto& s : t.simplices(degree + 1)) {
    std::vector<Face> faces;
    long last = -1;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(i));
      const long q = pos[*t.index_of(f)];
      if (q < 0) continue;
      faces.push_back({q, i % 2 == 0 ? 1 : -1});
      last = std::max(last, q);
    }
    if (last >= 0) triggered[last].push_back(std::move(faces));
  }

  Enumeration e;
  Cochain c(static_cast<std::size_t>(n), 0);
  std::uint64_t visited = 0;
  std::function<void(long)> descend = [&](long at) {
    if (at == n) {
      e.cocycles.push_back(c);
      return;
    }
    for (int v = 0; v < g.size; ++v) {
      if (++visited > guard) throw TooLarge("oracle: cocycle enumeration exceeds the guard");
      c[at] = static_cast<std::uint8_t>(v);
      bool ok = true;
      for (const auto& faces : triggered[at]) {
        std::uint8_t total = 0;
        for (const auto& f : faces) total = g.sum[total][g.signed_value(c[f.position], f.sign)];
        if (total != 0) {
          ok = false;
          break;
        }
      }
      if (ok) descend(at + 1);
    }
    c[at] = 0;
  };
  descend(0);

  // coboundaries: image of every (degree-1)-cochain
  std::unordered_set<std::string> image;
  if (degree == 0) {
    image.insert(key_of(Cochain(static_cast<std::size_t>(n), 0)));
  } else {
    const auto lower = free_positions(pair, degree - 1);
    std::vector<std::vector<Face>> cofaces;
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (lower[i] < 0) continue;
      cofaces.emplace_back();
    }
    for (std::size_t r = 0; r < t.count(degree); ++r) {
      if (pos[r] < 0) continue;
      const Simplex& s = t.simplices(degree)[r];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(i));
        const long q = lower[*t.index_of(f)];
        if (q >= 0) cofaces[q].push_back({pos[r], i % 2 == 0 ? 1 : -1});
      }
    }
    // B is generated by d of each unit cochain; close under addition
    std::vector<Cochain> generators;
    for (const auto& faces : cofaces) {
      for (std::int64_t stride : g.strides) {
        Cochain d(static_cast<std::size_t>(n), 0);
        const auto unit = static_cast<std::uint8_t>(stride);
        for (const auto& f : faces) d[f.position] = g.sum[d[f.position]][g.signed_value(unit, f.sign)];
        generators.push_back(std::move(d));
      }
    }
    std::vector<Cochain> frontier{Cochain(static_cast<std::size_t>(n), 0)};
    image.insert(key_of(frontier.front()));
    while (!frontier.empty()) {
      const Cochain x = std::move(frontier.back());
      frontier.pop_back();
      for (const auto& gen : generators) {
        if (++visited > guard) throw TooLarge("oracle: coboundary closure exceeds the guard");
        Cochain y(x.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = g.sum[x[i]][gen[i]];
        if (image.insert(key_of(y)).second) frontier.push_back(std::move(y));
      }
    }
  }
  e.coboundaries = image.size();
  e.coboundary_keys.assign(image.begin(), image.end());
  std::sort(e.coboundary_keys.begin(), e.coboundary_keys.end());
  return e;
}

BigInt class_count(const Pair& pair, int degree, const FiniteAbelianGroup& gamma,
                   std::uint64_t guard) {
  const auto e = enumerate(pair, degree, gamma, guard);
  if (e.cocycles.size() % e.coboundaries != 0) {
    throw std::logic_error("oracle: coboundaries do not divide cocycles");
  }
  return BigInt(static_cast<unsigned long>(e.cocycles.size() / e.coboundaries));
}

CohomologyCheck check_cohomology(const Pair& pair, int degree, const FiniteAbelianGroup& gamma,
                                 std::uint64_t guard) {
  const Group g(gamma);
  const auto e = enumerate(pair, degree, gamma, guard);
  CohomologyCheck r;
  r.cocycles = e.cocycles.size();
  r.coboundaries = e.coboundaries;
  r.classes = r.cocycles / r.coboundaries;
  const auto h = cohomology(pair, degree, gamma);
  r.smith_order = h.order();
  r.orders_match = r.cocycles % r.coboundaries == 0 && r.smith_order == BigInt(static_cast<unsigned long>(r.classes));

  const auto pos = free_positions(pair, degree);
  auto to_cochain = [&](const Cochain& c) {
    GammaCochain out = GammaCochain::zero(*pair.space, degree, gamma);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (pos[i] < 0) continue;
      for (std::size_t j = 0; j < g.moduli.size(); ++j) out.values[j][i] = g.component(c[pos[i]], j);
    }
    return out;
  };
  std::map<std::vector<std::int64_t>, std::pair<const Cochain*, std::uint64_t>> fibres;
  bool ok = true;
  for (const auto& z : e.cocycles) {
    auto coords = h.coordinates(to_cochain(z));
    auto [it, fresh] = fibres.try_emplace(std::move(coords), &z, 0);
    ++it->second.second;
    if (fresh) continue;
    Cochain diff(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) diff[i] = g.sum[z[i]][g.neg[(*it->second.first)[i]]];
    if (!std::binary_search(e.coboundary_keys.begin(), e.coboundary_keys.end(), key_of(diff))) {
      ok = false;
    }
  }
  for (const auto& [coords, fibre] : fibres) {
    if (fibre.second != r.coboundaries) ok = false;
  }
  r.partition_matches = ok && fibres.size() == r.classes;
  return r;
}

nlohmann::ordered_json PartitionOracle::to_json() const {
  nlohmann::ordered_json j;
  j["mu"] = mu.to_string();
  j["cocycles"] = cocycles;
  j["coboundaries"] = coboundaries;
  auto hist = nlohmann::ordered_json::array();
  for (const auto& [s, count] : pairing_histogram) hist.push_back({s, count});
  j["pairing_histogram"] = std::move(hist);
  j["value"] = value.to_json();
  const auto z = value.evaluate();
  j["numeric"] = {z.real(), z.imag()};
  return j;
}

PartitionOracle partition(const Triangulation& m, int p, const FiniteAbelianGroup& gamma,
                          const ActionSpec& spec, std::uint64_t guard) {
  if (!m.is_closed()) throw std::invalid_argument("oracle partition: manifold has a boundary");
  auto t = std::make_shared<const Triangulation>(m);
  const Pair pair = Pair::absolute(t);
  PartitionOracle r;
  for (int i = 0; i < p; ++i) {
    const BigInt h = class_count(pair, i, gamma, guard);
    r.mu *= Rational::power(Rational(h), (p - i) % 2 == 0 ? 1 : -1);
  }
  const auto e = enumerate(pair, p, gamma, guard);
  r.cocycles = e.cocycles.size();
  r.coboundaries = e.coboundaries;

  std::int64_t n = 1;
  const bool twisted = !spec.is_trivial();
  if (twisted) {
    if (gamma.invariant_factors().size() != 1) throw std::invalid_argument("cup_square needs Z_n");
    if (m.dim() != 2 * p || !m.oriented()) throw std::invalid_argument("cup_square needs dim 2p, oriented");
    n = gamma.invariant_factors()[0];
  }
  // front and back p-faces of every top simplex
  std::vector<std::pair<std::size_t, std::size_t>> halves;
  const auto pos = free_positions(pair, p);
  if (twisted) {
    for (const auto& s : m.simplices(m.dim())) {
      const Simplex front(s.begin(), s.begin() + p + 1);
      const Simplex back(s.begin() + p, s.end());
      halves.emplace_back(static_cast<std::size_t>(pos[*m.index_of(front)]),
                          static_cast<std::size_t>(pos[*m.index_of(back)]));
    }
  }
  for (const auto& z : e.cocycles) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < halves.size(); ++i) {
      s += m.top_sign(i) * static_cast<std::int64_t>(z[halves[i].first]) * z[halves[i].second];
    }
    s = ((s % n) + n) % n;
    ++r.pairing_histogram[s];
  }
  PhaseSum sum;
  for (const auto& [s, count] : r.pairing_histogram) {
    const std::int64_t e_ = twisted ? (((spec.lambda % n) + n) % n) * s % n : 0;
    sum += PhaseSum::root(n, e_, Rational(static_cast<long>(count)));
  }
  r.value = phase_scale(sum, r.mu / Rational(static_cast<long>(r.coboundaries)));
  return r;
}

}  // namespace dw::oracle
