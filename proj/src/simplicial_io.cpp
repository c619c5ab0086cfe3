#include <fstream>
#include <sstream>

#include "dw/simplicial.hpp"

namespace dw {

namespace {

template <typename T>
T field(const nlohmann::json& doc, const char* key, T fallback) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return fallback;
  return it->get<T>();
}

std::vector<std::vector<int>> resolve(const nlohmann::json& list) {
  std::vector<std::vector<int>> out;
  for (const auto& s : list) out.push_back(s.get<std::vector<int>>());
  return out;
}

// Maximal simplices of a subcomplex, for compact output.
std::vector<Simplex> maximal_in(const Triangulation& t, const Subcomplex& sub) {
  std::vector<Simplex> out;
  for (int k = t.dim(); k >= 0; --k) {
    for (std::size_t i = 0; i < t.count(k); ++i) {
      if (!sub.contains(k, i)) continue;
      const Simplex& s = t.simplices(k)[i];
      bool covered = false;
      for (const auto& m : out) {
        if (m.size() > s.size() && std::includes(m.begin(), m.end(), s.begin(), s.end())) {
          covered = true;
          break;
        }
      }
      if (!covered) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Triangulation parse_triangulation(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("triangulation document must be a JSON object");
    const int dim = doc.at("dim").get<int>();
    TriangulationOptions opts;
    opts.oriented = field(doc, "oriented", false);
    opts.check_manifold = field(doc, "manifold", true);
    const bool validate = field(doc, "validate", true);
    opts.check_orientation = validate;
    if (!validate) opts.check_manifold = false;

    auto labels = doc.at("vertices").get<std::vector<std::string>>();
    auto tops = resolve(doc.at("top_simplices"));
    for (const auto& s : tops) {
      if (static_cast<int>(s.size()) != dim + 1) {
        throw ParseError("top simplex with " + std::to_string(s.size()) +
                         " vertices in a complex of dimension " + std::to_string(dim));
      }
    }
    std::vector<int> signs;
    if (doc.contains("orientation")) signs = doc.at("orientation").get<std::vector<int>>();

    std::map<std::string, std::vector<std::vector<int>>> subs;
    if (doc.contains("subcomplexes")) {
      for (const auto& [name, list] : doc.at("subcomplexes").items()) subs[name] = resolve(list);
    }
    Triangulation t = Triangulation::build(field<std::string>(doc, "name", ""), dim,
                                           std::move(labels), tops, signs, subs, opts);
    if (doc.contains("gluing") && !doc.at("gluing").is_null()) {
      const auto& g = doc.at("gluing");
      GluingSpec spec;
      spec.plus = g.at("plus").get<std::string>();
      spec.minus = g.at("minus").get<std::string>();
      spec.vertex_map = g.at("vertex_map").get<std::map<std::string, std::string>>();
      t.subcomplex(spec.plus);
      t.subcomplex(spec.minus);
      t = t.with_gluing(std::move(spec));
    }
    if (doc.contains("charts")) {
      for (const auto& [name, map] : doc.at("charts").items()) {
        t.subcomplex(name);
        t = t.with_chart(name, map.get<std::map<std::string, std::string>>());
      }
    }
    return t;
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed triangulation document: ") + e.what());
  } catch (const TriangulationError& e) {
    throw ParseError(e.what());
  }
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_triangulation(doc);
}

nlohmann::ordered_json to_json(const Triangulation& t) {
  nlohmann::ordered_json j;
  j["name"] = t.name();
  j["dim"] = t.dim();
  j["oriented"] = t.oriented();
  if (!t.options().check_manifold) j["manifold"] = false;
  if (!t.options().check_orientation) j["validate"] = false;
  j["vertices"] = t.labels();
  j["top_simplices"] = t.simplices(t.dim());
  if (t.oriented()) j["orientation"] = t.top_signs();
  nlohmann::ordered_json subs = nlohmann::ordered_json::object();
  for (const auto& [name, sub] : t.subcomplexes()) subs[name] = maximal_in(t, sub);
  j["subcomplexes"] = std::move(subs);
  if (t.gluing()) {
    j["gluing"] = {{"plus", t.gluing()->plus},
                   {"minus", t.gluing()->minus},
                   {"vertex_map", t.gluing()->vertex_map}};
  }
  if (!t.charts().empty()) {
    nlohmann::ordered_json charts = nlohmann::ordered_json::object();
    for (const auto& [name, map] : t.charts()) charts[name] = map;
    j["charts"] = std::move(charts);
  }
  return j;
}

}  // namespace dw
