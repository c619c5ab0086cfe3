// Writes the example triangulations to a directory (default: corpus).
#include <filesystem>
#include <fstream>
#include <iostream>
#include <queue>
#include <set>

#include "dw/simplicial.hpp"

using namespace dw;

namespace {

using Tops = std::vector<std::vector<int>>;
using Subs = std::map<std::string, Tops>;

TriangulationOptions oriented_manifold() {
  TriangulationOptions o;
  o.oriented = true;
  return o;
}

Triangulation make(std::string name, int dim, std::vector<std::string> labels, const Tops& tops,
                   const Subs& subs = {}, bool oriented = true) {
  TriangulationOptions o = oriented_manifold();
  o.oriented = oriented;
  return Triangulation::build(std::move(name), dim, std::move(labels), tops,
                              std::vector<int>(tops.size(), 1), subs, o);
}

// Reorders each top simplex so that neighbours induce opposite orientations
// on shared facets (breadth-first from the first simplex).
Tops orient_coherently(Tops tops) {
  auto facet = [](const std::vector<int>& s, std::size_t i) {
    std::vector<int> f = s;
    f.erase(f.begin() + static_cast<long>(i));
    return f;
  };
  // sign of facet i of s relative to its sorted form, with the (-1)^i boundary sign
  auto induced = [&](const std::vector<int>& s, std::size_t i) {
    auto f = facet(s, i);
    return permutation_sign(f) * (i % 2 == 0 ? 1 : -1);
  };
  std::map<std::vector<int>, std::vector<std::pair<std::size_t, std::size_t>>> by_facet;
  for (std::size_t t = 0; t < tops.size(); ++t) {
    for (std::size_t i = 0; i < tops[t].size(); ++i) {
      auto f = facet(tops[t], i);
      std::sort(f.begin(), f.end());
      by_facet[f].emplace_back(t, i);
    }
  }
  std::vector<bool> done(tops.size(), false);
  std::queue<std::size_t> queue;
  done[0] = true;
  queue.push(0);
  while (!queue.empty()) {
    const std::size_t t = queue.front();
    queue.pop();
    for (std::size_t i = 0; i < tops[t].size(); ++i) {
      auto f = facet(tops[t], i);
      std::sort(f.begin(), f.end());
      for (auto [u, j] : by_facet[f]) {
        if (u == t || done[u]) continue;
        if (induced(tops[u], j) == induced(tops[t], i)) {
          std::swap(tops[u][0], tops[u][1]);
          // facet positions move with the swap
        }
        done[u] = true;
        queue.push(u);
      }
    }
  }
  return tops;
}

std::vector<std::string> numbered(int n, int first = 0) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(first + i));
  return out;
}

Triangulation interval(int edges) {
  Tops tops;
  for (int i = 0; i < edges; ++i) tops.push_back({i, i + 1});
  return make("interval" + std::to_string(edges), 1, numbered(edges + 1), tops,
              {{"start", {{0}}}, {"end", {{edges}}}});
}

Triangulation circle() {
  return make("circle", 1, {"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}},
              {{"pt", {{0}}}, {"pts", {{0}, {1}}}});
}

std::map<std::string, std::string> slice_chart(const Triangulation& t, const std::string& sub,
                                               const std::string& level) {
  std::map<std::string, std::string> chart;
  const Subcomplex& s = t.subcomplex(sub);
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    if (!s.contains(0, v)) continue;
    const std::string& label = t.labels()[v];
    chart[label] = label.substr(level.size() + 1);
  }
  return chart;
}

// I x N glued end to start, with charts from both ends to N.
Triangulation cylinder_over(const Triangulation& n, int edges, const std::string& name) {
  Triangulation c = product(interval(edges), n).with_name(name);
  const std::string last = std::to_string(edges);
  GluingSpec g;
  g.plus = "end|*";
  g.minus = "start|*";
  for (const auto& label : n.labels()) g.vertex_map[last + "|" + label] = "0|" + label;
  c = c.with_gluing(g);
  c = c.with_chart("start|*", slice_chart(c, "start|*", "0"));
  c = c.with_chart("end|*", slice_chart(c, "end|*", last));
  return c;
}

Triangulation disk() {
  return make("disk", 2, {"a", "b", "c", "o"}, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}},
              {{"rim", {{0, 1}, {1, 2}, {0, 2}}}, {"center", {{3}}}});
}

void write(const std::filesystem::path& dir, const std::string& file, const Triangulation& t) {
  std::ofstream out(dir / file);
  out << to_json(t).dump(1) << "\n";
  std::cout << file << ": " << t.vertex_count() << " vertices, " << t.total_simplices()
            << " simplices\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "corpus";
  std::filesystem::create_directories(dir);

  write(dir, "point.json", make("point", 0, {"a"}, {{0}}));
  write(dir, "interval.json", interval(1).with_name("interval"));
  write(dir, "interval3.json", interval(3));
  const Triangulation s1 = circle();
  write(dir, "circle.json", s1);
  const Triangulation s2 =
        make("sphere2", 2, numbered(4), {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}},
             {{"equator", {{0, 1}, {1, 2}, {0, 2}}}, {"pole", {{3}}}});
  write(dir, "sphere2.json", s2);
  const Triangulation t2 = product(s1, s1).with_name("torus2");
  write(dir, "torus2.json", t2);

  Tops seven;
  for (int i = 0; i < 7; ++i) {
    seven.push_back({i, (i + 1) % 7, (i + 3) % 7});
    seven.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  write(dir, "torus7.json",
        make("torus7", 2, numbered(7), orient_coherently(seven),
             {{"loop", {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {0, 6}}}}));

  write(dir, "rp2.json",
        make("rp2", 2, numbered(6, 1),
             {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
              {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}},
             {{"triangle", {{0, 1}, {1, 2}, {0, 2}}}, {"vertex", {{0}}}}, false));
  write(dir, "torus3.json", product(t2, s1).with_name("torus3"));
  write(dir, "s2xs2.json", product(s2, s2).with_name("s2xs2"));
  const Triangulation d = disk();
  write(dir, "disk.json", d);
  write(dir, "ball.json", make("ball", 3, numbered(4), {{0, 1, 2, 3}}));

  write(dir, "cylinder.json", cylinder_over(s1, 3, "cylinder"));
  write(dir, "cylinder6.json", cylinder_over(s1, 6, "cylinder6"));
  write(dir, "slab.json", cylinder_over(t2, 3, "slab"));

  Triangulation two = disjoint_union(d, d.reversed()).with_name("two_disks");
  GluingSpec g;
  g.plus = "1.rim";
  g.minus = "2.rim";
  for (const std::string v : {"a", "b", "c"}) g.vertex_map["1." + v] = "2." + v;
  two = two.with_gluing(g);
  two = two.with_chart("1.rim", {{"1.a", "a"}, {"1.b", "b"}, {"1.c", "c"}});
  two = two.with_chart("2.rim", {{"2.a", "a"}, {"2.b", "b"}, {"2.c", "c"}});
  write(dir, "two_disks.json", two);

  // negative control: one orientation sign flipped, validation off
  write(dir, "torus2_flipped.json", t2.with_flipped_sign(0).with_name("torus2_flipped"));
  return 0;
}
