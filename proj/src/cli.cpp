#include "dw/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dw/oracle.hpp"
#include "dw/tqft.hpp"

namespace dw::cli {

namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

FiniteAbelianGroup parse_gamma(const std::string& text) {
  try {
    return FiniteAbelianGroup::from_cyclic(parse_list(text, "--gamma"));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

ActionSpec parse_action(const std::string& name, std::int64_t lambda) {
  if (name == "trivial") return ActionSpec::trivial();
  if (name == "cup_square") return ActionSpec::cup_square(lambda);
  throw InputError("unknown action '" + name + "' (trivial|cup_square)");
}

Json gamma_json(const FiniteAbelianGroup& g) { return Json(g.invariant_factors()); }

TriangulationPtr load(const std::string& path) {
  return std::make_shared<const Triangulation>(load_triangulation(path));
}

struct Common {
  int p = 1;
  std::string gamma = "2";
  std::string action = "trivial";
  std::int64_t lambda = 1;
  std::uint64_t limit = kDefaultLimit;
  double tol = 1e-9;
  std::string format = "json";
};

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
}

void add_gamma(CLI::App* sub, Common& c) {
  sub->add_option("--gamma", c.gamma, "coefficient group as cyclic orders, e.g. 2,4")
      ->capture_default_str();
}

void add_p(CLI::App* sub, Common& c) {
  sub->add_option("--p", c.p, "field degree")->check(CLI::NonNegativeNumber)->capture_default_str();
}

void add_action(CLI::App* sub, Common& c) {
  sub->add_option("--action", c.action, "trivial or cup_square")
      ->check(CLI::IsMember({"trivial", "cup_square"}))
      ->capture_default_str();
  sub->add_option("--lambda", c.lambda, "cup_square coupling")->capture_default_str();
}

void add_limit(CLI::App* sub, Common& c) {
  sub->add_option("--limit", c.limit, "class enumeration limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

// ------------------------------------------------------------------ output

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(const Json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  if (j.contains("checks")) {
    for (const auto& c : j["checks"]) {
      out << std::left << std::setw(6) << c["status"].get<std::string>() << std::setw(22)
          << c["file"].get<std::string>() << std::setw(24) << c["check"].get<std::string>() << "p="
          << c["p"].dump() << " gamma=" << c["coefficients"].dump() << " "
          << c["action"]["action"].get<std::string>() << "\n";
    }
    const auto& s = j["summary"];
    out << "passed " << s["passed"].dump() << ", failed " << s["failed"].dump() << ", skipped "
        << s["skipped"].dump() << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
}

// ---------------------------------------------------------------- commands

Pair select_pair(const TriangulationPtr& t, const std::string& rel) {
  if (rel.empty() || rel == "none") return Pair::absolute(t);
  if (rel == "boundary") return Pair::relative_to_boundary(t);
  if (!t->has_subcomplex(rel)) throw InputError("no subcomplex named '" + rel + "'");
  return Pair::relative(t, t->subcomplex(rel));
}

Json cmd_cohomology(const std::string& path, const Common& c, const std::string& degrees,
                    const std::string& rel) {
  const auto t = load(path);
  const auto gamma = parse_gamma(c.gamma);
  const auto complex = make_complex(select_pair(t, rel));
  std::vector<std::int64_t> list = parse_list(degrees, "--degrees");
  if (list.empty()) {
    for (int i = 0; i <= t->dim(); ++i) list.push_back(i);
  }
  Json j;
  j["complex"] = t->name();
  j["relative_to"] = rel.empty() ? "none" : rel;
  j["coefficients"] = gamma_json(gamma);
  auto groups = Json::array();
  for (auto i : list) {
    if (i < 0 || i > t->dim()) throw InputError("degree " + std::to_string(i) + " out of range");
    groups.push_back(cohomology(complex, static_cast<int>(i), gamma).to_json());
  }
  j["groups"] = std::move(groups);
  return j;
}

Json cmd_measure(const std::string& path, const Common& c, const std::string& sub) {
  const auto t = load(path);
  const auto gamma = parse_gamma(c.gamma);
  Json j;
  j["complex"] = t->name();
  j["p"] = c.p;
  j["coefficients"] = gamma_json(gamma);
  j["measure"] = mu(t, c.p, gamma).to_json();
  if (!sub.empty()) {
    if (!t->has_subcomplex(sub)) throw InputError("no subcomplex named '" + sub + "'");
    const Subcomplex& n = t->subcomplex(sub);
    j["subcomplex"] = sub;
    j["relative_measure"] = mu_rel(t, n, c.p, gamma).to_json();
    j["lemma1"] = verify_lemma1(t, n, c.p, gamma).to_json();
  }
  return j;
}

Json cmd_partition(const std::string& path, const Common& c) {
  const auto t = load(path);
  const auto gamma = parse_gamma(c.gamma);
  const auto spec = parse_action(c.action, c.lambda);
  Json j;
  j["complex"] = t->name();
  j["p"] = c.p;
  j["coefficients"] = gamma_json(gamma);
  j["action"] = spec.to_json();
  j["partition"] = partition_closed(t, c.p, gamma, spec, c.limit).to_json();
  return j;
}

Json cmd_state_space(const std::string& path, const Common& c) {
  const auto t = load(path);
  const auto gamma = parse_gamma(c.gamma);
  const auto s = state_space(t, c.p, gamma, c.limit);
  Json j = s->to_json();
  const auto h = cohomology(Pair::absolute(t), c.p, gamma);
  auto basis = Json::array();
  for (const auto& q : s->basis) basis.push_back(h.coordinates(q));
  j["basis_coordinates"] = std::move(basis);
  return j;
}

BoundarySide side_for(const TriangulationPtr& b, const std::string& name, const StateSpacePtr& space) {
  BoundarySide side{name, {}, space};
  if (name.empty()) return side;
  if (!b->has_subcomplex(name)) throw InputError("no subcomplex named '" + name + "'");
  auto it = b->charts().find(name);
  if (it != b->charts().end()) side.chart = it->second;
  return side;
}

Json cmd_bordism(const std::string& path, const Common& c, const std::string& in,
                 const std::string& out, std::string state, std::string in_state,
                 std::string out_state) {
  const auto b = load(path);
  const auto gamma = parse_gamma(c.gamma);
  const auto spec = parse_action(c.action, c.lambda);
  if (in_state.empty()) in_state = state;
  if (out_state.empty()) out_state = state;
  auto space_for = [&](const std::string& side, const std::string& file) {
    if (side.empty()) return unit_state_space(c.p, gamma);
    if (file.empty()) throw InputError("a state-space triangulation is needed for side '" + side + "'");
    return state_space(load(file), c.p, gamma, c.limit);
  };
  StateSpacePtr sin = space_for(in, in_state);
  StateSpacePtr sout = (out_state == in_state && !in.empty() && !out.empty()) ? sin : space_for(out, out_state);
  const auto x = bordism_matrix(b, side_for(b, in, sin), side_for(b, out, sout), spec, c.limit);
  Json j;
  j["bordism"] = b->name();
  j["p"] = c.p;
  j["coefficients"] = gamma_json(gamma);
  j["action"] = spec.to_json();
  j["matrix"] = x.to_json();
  if (sin == sout) j["trace"] = phase_report(trace_glue(x));
  return j;
}

Json cmd_glue(const std::string& path, const std::string& emit_path) {
  const auto t = load(path);
  if (!t->gluing()) throw InputError("'" + path + "' has no gluing data");
  const auto g = glue(*t, *t->gluing());
  if (!emit_path.empty()) {
    std::ofstream f(emit_path);
    if (!f) throw InputError("cannot write '" + emit_path + "'");
    f << to_json(g.glued).dump(1) << "\n";
  }
  Json j;
  j["cut"] = t->name();
  j["glued"] = g.glued.name();
  j["vertices"] = g.glued.vertex_count();
  auto counts = Json::array();
  for (int k = 0; k <= g.glued.dim(); ++k) counts.push_back(g.glued.count(k));
  j["simplex_counts"] = std::move(counts);
  j["closed"] = g.glued.is_closed();
  j["euler_characteristic"] = g.glued.euler_characteristic();
  return j;
}

Json cmd_oracle(const std::string& path, const Common& c, const std::string& degrees) {
  const auto t = load(path);
  const auto gamma = parse_gamma(c.gamma);
  Json j;
  j["complex"] = t->name();
  j["coefficients"] = gamma_json(gamma);
  if (!degrees.empty()) {
    auto rows = Json::array();
    for (auto i : parse_list(degrees, "--degrees")) {
      const auto r = oracle::check_cohomology(Pair::absolute(t), static_cast<int>(i), gamma);
      rows.push_back({{"degree", i},
                      {"cocycles", r.cocycles},
                      {"coboundaries", r.coboundaries},
                      {"classes", r.classes},
                      {"smith_order", r.smith_order.get_str()},
                      {"orders_match", r.orders_match},
                      {"partition_matches", r.partition_matches}});
    }
    j["cohomology"] = std::move(rows);
    return j;
  }
  const auto spec = parse_action(c.action, c.lambda);
  j["p"] = c.p;
  j["action"] = spec.to_json();
  j["oracle"] = oracle::partition(*t, c.p, gamma, spec).to_json();
  return j;
}

// ------------------------------------------------------------------ verify

struct Check {
  std::string file, check;
  int p;
  Json gamma, action;
  std::string status;  // pass | fail | skip
  Json detail;
};

Json cmd_verify(const std::vector<std::string>& paths, const Common& c,
                const std::vector<std::string>& gammas, const std::string& ps,
                const std::vector<std::string>& actions, std::size_t trials, bool& failed,
                std::ostream& err) {
  std::vector<Check> checks;
  const auto p_list = parse_list(ps, "--p");
  std::vector<FiniteAbelianGroup> groups;
  for (const auto& g : gammas) groups.push_back(parse_gamma(g));
  std::vector<ActionSpec> specs;
  for (const auto& a : actions) specs.push_back(parse_action(a, c.lambda));

  for (const auto& path : paths) {
    const auto t = load(path);
    const std::string file = std::filesystem::path(path).filename().string();
    for (auto p64 : p_list) {
      const int p = static_cast<int>(p64);
      for (const auto& gamma : groups) {
        for (const auto& spec : specs) {
          auto add = [&](const std::string& name, bool ok, Json detail) {
            checks.push_back({file, name, p, gamma_json(gamma), spec.to_json(), ok ? "pass" : "fail", std::move(detail)});
          };
          auto skip = [&](const std::string& name, const std::string& why) {
            checks.push_back({file, name, p, gamma_json(gamma), spec.to_json(), "skip", Json{{"reason", why}}});
          };
          bool applicable = true;
          std::string why;
          try {
            check_action_applicable(*t, p, gamma, spec);
          } catch (const ActionError& e) {
            applicable = false;
            why = e.what();
          }
          // measure factorization for every named subcomplex away from the boundary
          if (spec.is_trivial()) {
            auto l0 = verify_lemma1(t, Subcomplex(*t), p, gamma);
            add("lemma1[]", l0.holds, l0.to_json());
            for (const auto& [name, sub] : t->subcomplexes()) {
              if (sub.empty() || sub.intersects(t->boundary())) continue;
              auto l = verify_lemma1(t, sub, p, gamma);
              add("lemma1[" + name + "]", l.holds, l.to_json());
            }
          }
          if (t->gluing()) {
            const auto glued = glue(*t, *t->gluing()).glued;
            if (!glued.is_closed()) {
              skip("gluing", "glued manifold has a boundary");
            } else if (!spec.is_trivial() && (glued.dim() != 2 * p || !gamma.is_cyclic() || gamma.is_trivial())) {
              skip("gluing", "action not defined on the glued manifold");
            } else {
              auto r = verify_gluing(t, p, gamma, spec, c.tol, c.limit);
              add("gluing", r.holds && r.excision && r.lemma1 && r.pullback_closed, r.to_json());
            }
          }
          if (!t->is_closed()) continue;
          if (!applicable) {
            skip("closed", why);
            continue;
          }
          if (!spec.is_trivial()) {
            auto g = check_gauge_invariance(*t, p, gamma, spec, trials);
            add("gauge", g.holds, Json{{"classes", g.classes}, {"trials", g.trials}});
          } else {
            const auto z = partition_closed(t, p, gamma, spec, c.limit);
            const auto h = cohomology(Pair::absolute(t), p, gamma).order();
            const Rational expected = z.mu * Rational(h);
            add("untwisted_formula", z.value == PhaseSum::constant(expected),
                Json{{"z", z.value.constant_term().to_string()}, {"mu_times_order", expected.to_string()}});
          }
          if (t->oriented()) {
            auto d = dagger_check(t, p, gamma, spec, c.limit);
            add("dagger", d.holds, Json{{"z", phase_report(d.z)}, {"z_reversed", phase_report(d.z_reversed)}});
          }
          auto m = monoidal_check(t, t, p, gamma, spec, c.limit);
          add("monoidal", m.holds, Json{{"z_union", phase_report(m.z_union)}, {"z_product", phase_report(m.z_product)}});
        }
      }
    }
  }
  Json j;
  auto rows = Json::array();
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& ch : checks) {
    if (ch.status == "pass") ++pass;
    if (ch.status == "fail") ++fail;
    if (ch.status == "skip") ++skipped;
    rows.push_back({{"file", ch.file}, {"check", ch.check}, {"p", ch.p}, {"coefficients", ch.gamma},
                    {"action", ch.action}, {"status", ch.status}, {"detail", ch.detail}});
  }
  if (checks.empty()) err << "warning: verify selected no checks\n";
  j["checks"] = std::move(rows);
  j["summary"] = {{"passed", pass}, {"failed", fail}, {"skipped", skipped}};
  failed = fail > 0;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher abelian Dijkgraaf-Witten invariants of triangulated manifolds", "dwtool"};
  app.require_subcommand(1);
  Common c;
  std::string path, degrees, rel, sub, in, outside, state, in_state, out_state, emit_path;
  std::vector<std::string> paths;

  auto* coh = app.add_subcommand("cohomology", "cohomology groups of a triangulation");
  coh->add_option("file", path)->required();
  add_gamma(coh, c);
  coh->add_option("--degrees", degrees, "comma separated degrees (default: all)");
  coh->add_option("--rel", rel, "none, boundary or a subcomplex name");
  add_format(coh, c);

  auto* mea = app.add_subcommand("measure", "measure factor mu and its factorization audit");
  mea->add_option("file", path)->required();
  add_p(mea, c);
  add_gamma(mea, c);
  mea->add_option("--sub", sub, "subcomplex N for mu_(M,N) and the factorization audit");
  add_format(mea, c);

  auto* par = app.add_subcommand("partition", "partition function of a closed manifold");
  par->add_option("file", path)->required();
  add_p(par, c);
  add_gamma(par, c);
  add_action(par, c);
  add_limit(par, c);
  add_format(par, c);

  auto* sta = app.add_subcommand("state-space", "state space of a closed boundary manifold");
  sta->add_option("file", path)->required();
  add_p(sta, c);
  add_gamma(sta, c);
  add_limit(sta, c);
  add_format(sta, c);

  auto* bor = app.add_subcommand("bordism", "bordism matrix between boundary state spaces");
  bor->add_option("file", path)->required();
  bor->add_option("--in", in, "incoming boundary subcomplex (empty: none)");
  bor->add_option("--out", outside, "outgoing boundary subcomplex (empty: none)");
  bor->add_option("--state", state, "reference triangulation for both sides");
  bor->add_option("--in-state", in_state, "reference triangulation for the incoming side");
  bor->add_option("--out-state", out_state, "reference triangulation for the outgoing side");
  add_p(bor, c);
  add_gamma(bor, c);
  add_action(bor, c);
  add_limit(bor, c);
  add_format(bor, c);

  auto* glu = app.add_subcommand("glue", "glue a cut manifold along its gluing data");
  glu->add_option("file", path)->required();
  glu->add_option("--emit", emit_path, "write the glued triangulation here");
  add_format(glu, c);

  std::vector<std::string> gammas, actions;
  std::string ps = "1";
  std::size_t trials = 100;
  auto* ver = app.add_subcommand("verify", "factorization, gluing, gauge, dagger and monoidal checks");
  ver->add_option("files", paths);
  ver->add_option("--p", ps, "comma separated field degrees")->capture_default_str();
  ver->add_option("--gamma", gammas, "coefficient group (repeatable)");
  ver->add_option("--action", actions, "trivial and/or cup_square (repeatable)")
      ->check(CLI::IsMember({"trivial", "cup_square"}));
  ver->add_option("--lambda", c.lambda, "cup_square coupling")->capture_default_str();
  ver->add_option("--trials", trials, "gauge perturbations per class")->capture_default_str();
  ver->add_option("--tol", c.tol, "tolerance for twisted comparisons")->capture_default_str();
  add_limit(ver, c);
  add_format(ver, c);

  auto* ora = app.add_subcommand("oracle", "exhaustive cochain enumeration (small complexes only)");
  ora->add_option("file", path)->required();
  ora->add_option("--degrees", degrees, "compare cohomology in these degrees instead");
  add_p(ora, c);
  add_gamma(ora, c);
  add_action(ora, c);
  add_format(ora, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Json report;
    bool failed = false;
    if (*coh) report = cmd_cohomology(path, c, degrees, rel);
    if (*mea) report = cmd_measure(path, c, sub);
    if (*par) report = cmd_partition(path, c);
    if (*sta) report = cmd_state_space(path, c);
    if (*bor) report = cmd_bordism(path, c, in, outside, state, in_state, out_state);
    if (*glu) report = cmd_glue(path, emit_path);
    if (*ora) report = cmd_oracle(path, c, degrees);
    if (*ver) {
      if (gammas.empty()) gammas.push_back("2");
      if (actions.empty()) actions.push_back("trivial");
      report = cmd_verify(paths, c, gammas, ps, actions, trials, failed, err);
    }
    emit(report, c.format, out);
    return failed ? kVerificationFailed : kOk;
  } catch (const EnumerationLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const oracle::TooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace dw::cli
