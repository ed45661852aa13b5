#include "zdcolor/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "zdcolor/census.hpp"
#include "zdcolor/fill.hpp"
#include "zdcolor/frozen.hpp"
#include "zdcolor/io.hpp"
#include "zdcolor/lattice.hpp"
#include "zdcolor/listcolor.hpp"
#include "zdcolor/mixing.hpp"

#ifndef ZDCOLOR_VERSION
#define ZDCOLOR_VERSION "0.0.0"
#endif

namespace zdcolor::cli {

std::string version() { return ZDCOLOR_VERSION; }

namespace {

using io::Json;

// Result of one subcommand before formatting.
struct Outcome {
  Json result = Json::object();
  std::string verdict = "ok";
  int code = 0;
  std::optional<PartialColoring> picture;
  std::string csv;  // rows without the manifest line
};

struct Globals {
  int threads = 1;
  std::string format = "json";
  std::string out;
};

// Unwraps a CLI output document down to the object under `key`, so files
// written by one subcommand can be fed to another.
Json unwrap(Json j, std::initializer_list<const char*> keys) {
  if (j.is_object() && j.contains("result")) j = j["result"];
  for (const char* key : keys)
    if (j.is_object() && j.contains(key)) return j[key];
  return j;
}

PartialColoring read_coloring(const std::string& path) {
  return io::coloring_from_json(unwrap(io::read_json_file(path), {"coloring", "boundary", "x"}));
}

// "1,2;2,2" or "box:1,1:3,3"
CoordSet parse_sites(const std::string& text, int d) {
  CoordSet out;
  auto check = [&](const Coord& c) {
    if (c.dim() != d) throw std::invalid_argument("coordinate " + c.str() + " is not " + std::to_string(d) + "-dimensional");
    return c;
  };
  if (text.rfind("box:", 0) == 0) {
    auto rest = text.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("box sets are written box:LOW:HIGH");
    Box b(check(Coord::parse(rest.substr(0, colon))), check(Coord::parse(rest.substr(colon + 1))));
    return b.site_set();
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.insert(check(Coord::parse(item)));
  if (out.empty()) throw std::invalid_argument("empty site set");
  return out;
}

Json sites_json(const CoordSet& s) {
  Json a = Json::array();
  for (const auto& c : s) a.push_back(io::coords_to_json(c));
  return a;
}

Json sites_json(const std::vector<Coord>& s) {
  Json a = Json::array();
  for (const auto& c : s) a.push_back(io::coords_to_json(c));
  return a;
}

void require_range(int value, int lo, int hi, const char* what) {
  if (value < lo || value > hi)
    throw std::domain_error(std::string(what) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

Json rule_json(const LinearColoringRule& r) {
  return Json{{"d", r.d}, {"q", r.q}, {"weights", r.weights}, {"offset", r.offset}, {"folds", 0}};
}

Json rule_json(const LiftedColoringRule& r) {
  Json j = rule_json(r.base);
  j["d"] = r.dim();
  j["folds"] = r.folds;
  return j;
}

std::string big_str(const BigInt& x) { return x.str(); }

// ---------------------------------------------------------------- frozen

struct FrozenGen {
  int d = 2, q = 0, size = 8;
  bool single_site = false;
};

Outcome frozen_gen(const FrozenGen& p) {
  require_range(p.d, 1, 8, "d");
  require_range(p.size, 1, 64, "size");
  Outcome o;
  Box window = Box::cube(p.size, p.d);
  if (window.volume() > (1u << 20)) throw std::domain_error("evaluation window too large");
  std::optional<ProperColoring> eval;
  if (p.single_site) {
    int q = p.q ? p.q : 2 * p.d + 1;
    require_range(q, 2, 2 * p.d + 1, "q");
    auto rule = q == 2 * p.d + 1 ? std::optional(single_site_frozen(p.d)) : find_single_site_frozen(p.d, q);
    o.result["family"] = "single-site-frozen";
    if (!rule) {
      o.result["found"] = false;
      o.verdict = "infeasible";
      o.code = 1;
      return o;
    }
    o.result["found"] = true;
    o.result["rule"] = rule_json(*rule);
    o.result["single_site_frozen"] = single_site_frozen_property(*rule);
    eval = paint(*rule, window, q);
  } else {
    int q = p.q ? p.q : p.d + 1;
    require_range(q, 2, p.d + 1, "q");
    auto rule = frozen_rule(p.d, q);
    o.result["family"] = "frozen";
    o.result["found"] = true;
    o.result["rule"] = rule_json(rule);
    eval = paint(rule, window, q);
  }
  o.result["proper"] = is_proper(window, eval->data());
  o.result["coloring"] = io::to_json(*eval);
  if (p.d == 2) {
    o.result["ascii"] = io::render_ascii(*eval);
    o.picture = eval->to_partial();
  }
  return o;
}

struct FrozenCheck {
  std::string coloring, sites;
  int q = 0;
};

Outcome frozen_check(const FrozenCheck& p) {
  auto partial = read_coloring(p.coloring);
  auto dense = densify(partial, partial.window());
  if (!dense) throw std::invalid_argument("coloring must be a total proper coloring of its window");
  require_range(p.q, 1, kMaxColors, "q");
  for (auto c : dense->data())
    if (c >= p.q) throw std::domain_error("coloring uses a color outside the palette");
  ProperColoring c(dense->box(), p.q, std::vector<Color>(dense->data().begin(), dense->data().end()));
  auto F = parse_sites(p.sites, c.dim());
  Outcome o;
  bool frozen = is_frozen_on(c, F, p.q);
  o.result["frozen"] = frozen;
  o.result["obstruction"] = frozen_obstruction(F, p.q);
  o.result["F"] = sites_json(F);
  if (!frozen) {
    auto alt = alternative_recoloring(c, F);
    o.result["alternative"] = io::to_json(*alt);
    if (auto k = kempe_move_within(c, F)) {
      o.result["kempe_move"] = Json{{"colors", {k->color_pair.first, k->color_pair.second}},
                                    {"vertices", sites_json(k->vertices)}};
    }
    o.verdict = "not-frozen";
    o.code = 1;
  }
  o.picture = c.to_partial();
  return o;
}

struct FrozenObstruct {
  int d = 2, q = 0;
  std::string sites;
};

Outcome frozen_obstruct(const FrozenObstruct& p) {
  require_range(p.d, 1, 16, "d");
  require_range(p.q, 1, kMaxColors, "q");
  auto F = parse_sites(p.sites, p.d);
  auto counts = edge_counts(F);
  Outcome o;
  const auto lhs = static_cast<std::int64_t>(p.q - 1) * static_cast<std::int64_t>(F.size());
  const auto rhs = static_cast<std::int64_t>(counts.internal + counts.crossing);
  bool holds = frozen_obstruction(F, p.q);
  o.result = Json{{"size", F.size()},
                  {"internal_edges", counts.internal},
                  {"crossing_edges", counts.crossing},
                  {"lhs", lhs},
                  {"rhs", rhs},
                  {"obstruction", holds}};
  if (!holds) {
    o.verdict = "inconclusive";
    o.code = 1;
  }
  return o;
}

// ---------------------------------------------------------------- listcolor

int palette_of(const ListAssignment& lists) {
  int top = 0;
  for (const auto& l : lists)
    for (auto c : l) top = std::max(top, c + 1);
  return std::max(top, 1);
}

struct ListSolve {
  int n = 3, d = 2, palette = 0;
  std::string lists;
  std::optional<std::uint64_t> seed;
};

Outcome listcolor_solve(const ListSolve& p) {
  require_range(p.d, 1, 6, "d");
  require_range(p.n, 1, 64, "n");
  Box cube = Box::cube(p.n, p.d);
  if (cube.volume() > 100'000) throw std::domain_error("cube too large");
  auto sites = cube.sites();
  auto sg = SiteGraph::induced(cube);
  ListAssignment lists;
  if (!p.lists.empty()) {
    lists = io::lists_from_json(unwrap(io::read_json_file(p.lists), {"lists"}), sites);
  } else {
    const int palette = p.palette ? p.palette : 2 * (p.d + 2);
    require_range(palette, p.d + 2, kMaxColors, "palette");
    SplitMix64 rng(*p.seed);
    lists = random_lists(list_bounds(p.n, p.d), palette, rng);
  }
  for (const auto& l : lists)
    for (auto c : l) require_range(c, 0, kMaxColors - 1, "list color");
  auto res = list_color(sg.graph, lists);
  Outcome o;
  o.result["lists"] = io::lists_to_json(sites, lists);
  o.result["solved"] = res.solved();
  o.result["mode"] = res.mode == ListColorMode::kernel ? "kernel" : "backtracking";
  if (res.solved()) {
    ProperColoring c(cube, std::max(p.palette, palette_of(lists)), *res.colors);
    o.result["respects_lists"] = respects_lists(sg.graph, lists, *res.colors);
    o.result["coloring"] = io::to_json(c);
    if (p.d == 2) o.picture = c.to_partial();
  } else {
    o.verdict = "unsat";
    o.code = 1;
  }
  return o;
}

struct ListOrient {
  int n = 3, d = 2, cap = 0;
  bool perimeter = false;
};

Outcome listcolor_orient(const ListOrient& p) {
  require_range(p.d, 1, 6, "d");
  require_range(p.n, 1, 64, "n");
  Box cube = Box::cube(p.n, p.d);
  if (cube.volume() > 100'000) throw std::domain_error("cube too large");
  auto sg = SiteGraph::induced(cube);
  auto bounds = list_bounds(p.n, p.d);
  if (p.cap > 0)
    for (auto& b : bounds) b = std::min(b, p.cap);
  Outcome o;
  std::optional<Orientation> orient;
  if (p.perimeter) {
    if (p.d != 2) throw std::domain_error("the perimeter-cycle orientation is for d = 2");
    orient = perimeter_cycle_orientation(p.n);
  } else {
    auto r = hall_orientation(sg.graph, bounds);
    if (!r.feasible()) {
      std::vector<Coord> witness;
      std::int64_t slack = 0;
      std::vector<char> members(sg.sites.size(), 0);
      for (auto v : r.hall_witness) {
        witness.push_back(sg.sites[v]);
        slack += bounds[v] - 1;
        members[v] = 1;
      }
      o.result["feasible"] = false;
      o.result["hall_witness"] = sites_json(witness);
      o.result["witness_capacity"] = slack;
      o.result["witness_edges"] = sg.graph.edges_within(members);
      o.verdict = "infeasible";
      o.code = 1;
      return o;
    }
    orient = r.orientation;
  }
  o.result["feasible"] = true;
  o.result["respects_bounds"] = orientation_respects(sg.graph, *orient, bounds);
  o.result["odd_directed_cycle"] = has_odd_directed_cycle(orient->digraph());
  o.result["max_out_degree"] = *std::max_element(orient->out_degree.begin(), orient->out_degree.end());
  Json arcs = Json::array();
  for (auto [a, b] : orient->arcs)
    arcs.push_back(Json::array({io::coords_to_json(sg.sites[a]), io::coords_to_json(sg.sites[b])}));
  o.result["arcs"] = std::move(arcs);
  return o;
}

struct WitnessCube {
  int n = 2, d = 3, palette = 4, list_size = 2;
};

Outcome listcolor_witness(const WitnessCube& p, int threads) {
  require_range(p.d, 1, 4, "d");
  require_range(p.n, 1, 3, "n");
  require_range(p.palette, 1, 16, "palette");
  require_range(p.list_size, 1, p.palette, "list size");
  auto s = search_unlistable(p.n, p.d, p.palette, p.list_size, threads);
  Box cube = Box::cube(p.n, p.d);
  auto sites = cube.sites();
  auto sg = SiteGraph::induced(cube);
  Outcome o;
  o.result["assignments_checked"] = s.assignments_checked;
  o.result["witnesses_found"] = s.witnesses_found;
  o.result["found"] = s.witness.has_value();
  if (s.witness) {
    std::uint64_t colorings = 1;
    for (const auto& l : *s.witness) colorings *= l.size();
    o.result["lists"] = io::lists_to_json(sites, *s.witness);
    o.result["verified_unsat"] = !backtrack_list_color(sg.graph, *s.witness).has_value();
    o.result["candidate_colorings"] = colorings;
    auto e = enlargement_diagnostic(sg.graph, *s.witness, p.palette);
    o.result["enlargements"] = e.enlargements;
    o.result["enlargements_colorable"] = e.satisfiable;
  } else {
    o.verdict = "no-witness";
    o.code = 1;
  }
  if (p.n == 2 && p.d == 3 && p.palette >= 4) {
    auto layered = layered_cube_lists();
    o.result["layered"] = Json{{"lists", io::lists_to_json(sites, layered)},
                               {"unsat", !backtrack_list_color(sg.graph, layered).has_value()}};
  }
  return o;
}

// ---------------------------------------------------------------- fill

struct FillBox {
  int n = 3, d = 2, q = 3;
  std::string boundary;
};

Outcome fill_box_cmd(const FillBox& p) {
  require_range(p.d, 1, 6, "d");
  require_range(p.n, 1, 64, "n");
  require_range(p.q, 1, kMaxColors, "q");
  Box target = Box::cube(p.n, p.d);
  if (target.volume() > 100'000) throw std::domain_error("box too large");
  auto raw = read_coloring(p.boundary);
  if (raw.dim() != p.d) throw std::invalid_argument("boundary dimension differs from d");
  PartialColoring boundary(target.grown(1), p.q);
  for (const auto& [site, color] : raw.assignment()) boundary.set(site, color);
  FillProblem problem{target, boundary, p.q};
  problem.validate();
  Outcome o;
  o.result["guaranteed"] = fill_guaranteed(target, p.q);
  auto filled = fill_box(problem);
  o.result["extends"] = filled.has_value();
  if (filled) {
    o.result["coloring"] = io::to_json(*filled);
    o.picture = *filled;
  } else {
    o.result["boundary"] = io::to_json(boundary);
    o.picture = boundary;
    o.verdict = "unsat";
    o.code = 1;
  }
  return o;
}

struct FillWitness {
  int d = 2, q = 3, n = 3;
};

Outcome fill_witness(const FillWitness& p) {
  require_range(p.d, 1, 6, "d");
  require_range(p.n, 1, 16, "n");
  auto problem = non_extendable_boundary(p.d, p.q, p.n);
  Outcome o;
  o.result["boundary"] = io::to_json(problem.boundary);
  o.result["extends"] = fill_box(problem).has_value();
  if (p.d == 2) o.picture = problem.boundary;
  return o;
}

struct FillFep {
  std::string u, ubar;
  int n = 1, q = 5, window = 1;
};

Outcome fill_fep(const FillFep& p) {
  auto u = read_coloring(p.u);
  auto ubar = read_coloring(p.ubar);
  require_range(p.n, 0, 16, "n");
  require_range(p.window, 0, 16, "window");
  Box window = tiled_window(u.dim(), p.n, p.window);
  if (window.volume() > 200'000) throw std::domain_error("window too large");
  auto out = fep_extend(u, ubar, p.q, p.n, window);
  Outcome o;
  o.result["window"] = Json{{"low", io::coords_to_json(window.low())}, {"high", io::coords_to_json(window.high())}};
  o.result["extends"] = out.has_value();
  if (out) {
    o.result["coloring"] = io::to_json(*out);
    if (out->dim() == 2) o.picture = out->to_partial();
  } else {
    o.verdict = "unsat";
    o.code = 1;
  }
  return o;
}

// ---------------------------------------------------------------- mixing

struct Tssm {
  int d = 2, q = 4, radius = 6, exhaustive = 0;
};

Outcome mixing_tssm(const Tssm& p) {
  require_range(p.radius, 1, 64, "radius");
  require_range(p.exhaustive, 0, 4, "exhaustive radius");
  auto w = tssm_witness(p.d, p.q);
  auto f = verify_forcing(w, p.radius);
  Outcome o;
  o.result["forced"] = f.forced;
  o.result["radius"] = p.radius;
  o.result["gap"] = w.n;
  o.result["u"] = io::coords_to_json(w.u());
  o.result["v"] = io::coords_to_json(w.v());
  o.result["axis"] = f.axis;
  if (f.first_unforced) o.result["first_unforced"] = io::coords_to_json(*f.first_unforced);
  if (p.exhaustive > 0) o.result["exhaustive_forced"] = axis_forced_exhaustive(w, p.exhaustive);
  if (p.d == 2) o.picture = paint(w.x, Box::ball(p.radius, 2), p.q).to_partial();
  if (!f.forced || (p.exhaustive > 0 && !o.result["exhaustive_forced"].get<bool>())) {
    o.verdict = "not-forced";
    o.code = 1;
  }
  return o;
}

struct Si {
  int d = 2, q = 3, n = 2;
};

Outcome mixing_si(const Si& p) {
  require_range(p.n, 1, 8, "n");
  auto v = si_violation_witness(p.d, p.q, p.n);
  Outcome o;
  o.result = Json{{"x", rule_json(v.x)},
                  {"n", v.n},
                  {"y_at_origin", v.y_at_origin},
                  {"fillings", big_str(v.fillings)},
                  {"unique_filling_is_x", v.unique_filling_is_x},
                  {"violated", v.violated}};
  if (!v.violated) {
    o.verdict = "no-violation";
    o.code = 1;
  }
  return o;
}

struct Moves {
  int box = 3, d = 2, q = 6;
  std::string kind = "pivot", boundary;
  std::uint64_t cap = 10'000'000;
};

Outcome mixing_moves(const Moves& p) {
  require_range(p.d, 1, 4, "d");
  require_range(p.box, 1, 8, "box");
  require_range(p.q, 1, kMaxColors, "q");
  Box box = Box::cube(p.box, p.d);
  PartialColoring boundary(box.grown(1), p.q);
  if (!p.boundary.empty()) {
    const auto given = read_coloring(p.boundary);
    for (const auto& [site, color] : given.assignment()) boundary.set(site, color);
  }
  auto r = move_graph(box, boundary, p.q, MoveSpec::parse(p.kind), p.cap);
  Outcome o;
  o.result = Json{{"move", r.move.str()},
                  {"states", r.state_count},
                  {"components", r.component_count},
                  {"largest_component", r.largest_component},
                  {"diameter_bound", r.diameter_bound},
                  {"component_sizes", r.component_sizes},
                  {"connected", r.connected()}};
  if (!r.connected()) {
    o.verdict = "disconnected";
    o.code = 1;
  }
  return o;
}

// ---------------------------------------------------------------- census

CountMethod parse_method(const std::string& m) {
  if (m == "auto") return CountMethod::automatic;
  if (m == "tm") return CountMethod::transfer_matrix;
  if (m == "dfs") return CountMethod::dfs;
  throw std::invalid_argument("method must be auto, tm or dfs");
}

const char* method_name(CountMethod m) {
  switch (m) {
    case CountMethod::transfer_matrix: return "tm";
    case CountMethod::dfs: return "dfs";
    default: return "auto";
  }
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

struct Count {
  int n = 2, d = 2, q = 3;
  std::string boundary, method = "auto";
  bool frozen = false;
};

Outcome census_count(const Count& p) {
  require_range(p.d, 1, 8, "d");
  require_range(p.n, 1, 64, "n");
  require_range(p.q, 1, kMaxColors, "q");
  Box box = Box::cube(p.n, p.d);
  PartialColoring constraints(box.grown(1), p.q);
  if (p.frozen) {
    if (!p.boundary.empty()) throw std::invalid_argument("--frozen and --boundary are exclusive");
    require_range(p.q, 2, p.d + 1, "q");
    constraints = paint_sites(frozen_rule(p.d, p.q), external_boundary(box), box.grown(1), p.q);
  } else if (!p.boundary.empty()) {
    const auto given = read_coloring(p.boundary);
    for (const auto& [site, color] : given.assignment()) constraints.set(site, color);
  }
  auto r = count_exact(box, p.q, constraints, parse_method(p.method));
  Outcome o;
  o.result = Json{{"n", p.n},
                  {"d", p.d},
                  {"q", p.q},
                  {"sites", box.volume()},
                  {"boundary_sites", constraints.size()},
                  {"count", big_str(r.count)},
                  {"log_count_per_site", r.log_count_per_site},
                  {"method", method_name(r.method)}};
  o.csv = "n,d,q,count,log_count_per_site,method\n" + std::to_string(p.n) + "," + std::to_string(p.d) + "," +
          std::to_string(p.q) + "," + big_str(r.count) + "," + fmt_double(r.log_count_per_site) + "," +
          method_name(r.method) + "\n";
  if (r.count == 0) {
    o.verdict = "unsat";
    o.code = 1;
  }
  return o;
}

struct Entropy {
  int d = 2, q = 3, n_min = 1, n_max = 6;
  bool frozen = false;
};

Outcome census_entropy(const Entropy& p, int threads) {
  require_range(p.d, 1, 8, "d");
  require_range(p.n_min, 1, 64, "n-min");
  require_range(p.n_max, p.n_min, 64, "n-max");
  if (p.frozen) require_range(p.q, 2, p.d + 1, "q");
  // One job per n; jobs are independent, results keep their order.
  std::vector<std::future<std::vector<EntropyPoint>>> jobs;
  std::vector<EntropyPoint> points;
  for (int n = p.n_min; n <= p.n_max; ++n) {
    jobs.push_back(std::async(std::launch::async, [&, n] { return entropy_series(p.d, p.q, {n}, p.frozen); }));
    if (static_cast<int>(jobs.size()) >= std::max(1, threads) || n == p.n_max) {
      for (auto& j : jobs)
        for (auto& pt : j.get()) points.push_back(std::move(pt));
      jobs.clear();
    }
  }
  Outcome o;
  Json series = Json::array();
  o.csv = "n,count,log_count_per_site\n";
  for (const auto& pt : points) {
    series.push_back(Json{{"n", pt.n}, {"count", big_str(pt.count)}, {"log_count_per_site", pt.per_site}});
    o.csv += std::to_string(pt.n) + "," + big_str(pt.count) + "," + fmt_double(pt.per_site) + "\n";
  }
  o.result = Json{{"d", p.d}, {"q", p.q}, {"frozen", p.frozen}, {"series", std::move(series)}};
  return o;
}

struct Sample {
  int n = 3, d = 2, q = 5;
  std::uint64_t steps = 0, seed = 0;
  std::string boundary;
};

Outcome census_sample(const Sample& p) {
  require_range(p.d, 1, 8, "d");
  require_range(p.n, 1, 256, "n");
  require_range(p.q, 1, kMaxColors, "q");
  Box box = Box::cube(p.n, p.d);
  if (box.volume() > 1'000'000) throw std::domain_error("region too large");
  PartialColoring boundary(box.grown(1), p.q);
  if (!p.boundary.empty()) {
    const auto given = read_coloring(p.boundary);
    for (const auto& [site, color] : given.assignment()) boundary.set(site, color);
  }
  Outcome o;
  try {
    auto c = glauber_sample(SamplerConfig{box, p.q, boundary, p.steps, p.seed});
    o.result["generator"] = "splitmix64";
    o.result["sweeps"] = p.steps;
    o.result["coloring"] = io::to_json(c);
    if (p.d == 2) o.picture = c.to_partial();
    std::string row;
    o.csv = "index,color\n";
    for (std::size_t i = 0; i < c.data().size(); ++i) o.csv += std::to_string(i) + "," + std::to_string(c.at(i)) + "\n";
  } catch (const std::domain_error& e) {
    if (std::string(e.what()).rfind("UNSAT", 0) != 0) throw;
    o.result["error"] = e.what();
    o.verdict = "unsat";
    o.code = 1;
  }
  return o;
}

// ---------------------------------------------------------------- plumbing

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Echo of every option of the chosen command, including defaults.
Json params_of(const std::vector<const CLI::App*>& chain) {
  Json params = Json::object();
  for (const auto* app : chain) {
    for (const auto* opt : app->get_options()) {
      if (opt->get_lnames().empty()) continue;
      const auto& name = opt->get_lnames().front();
      if (name == "help" || name == "version") continue;
      if (opt->get_items_expected_max() == 0) {
        params[name] = opt->count() > 0;
        continue;
      }
      std::string value = opt->count() > 0 ? opt->results().back() : opt->get_default_str();
      if (value.empty()) {
        params[name] = nullptr;
        continue;
      }
      try {
        std::size_t used = 0;
        long long as_int = std::stoll(value, &used);
        if (used == value.size()) {
          params[name] = as_int;
          continue;
        }
      } catch (const std::exception&) {
      }
      params[name] = value;
    }
  }
  return params;
}

std::string with_comment(const std::string& body, const std::string& comment_line) {
  return "# " + comment_line + "\n" + body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proper colorings of Z^d windows: frozen patterns, list coloring, filling, mixing, counting.", "zdcolor"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  Globals g;
  g.threads = default_threads();
  app.add_option("--threads", g.threads, "Worker threads")->envname(kThreadsEnv)->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "ascii", "pgm"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Write output to this file instead of standard output");

  std::function<Outcome()> action;

  auto leaf = [](CLI::App* parent, const char* name, const char* help) { return parent->add_subcommand(name, help); };

  // frozen
  auto* frozen = app.add_subcommand("frozen", "Frozen colorings and frozenness checks")->require_subcommand(1);
  FrozenGen fg;
  auto* fgen = leaf(frozen, "gen", "Generate a frozen (or single-site frozen) coloring rule");
  fgen->add_option("--d", fg.d, "Dimension")->required();
  fgen->add_option("--q", fg.q, "Colors (default d+1, or 2d+1 with --single-site)")->capture_default_str();
  fgen->add_flag("--single-site", fg.single_site, "Single-site frozen rule");
  fgen->add_option("--size", fg.size, "Side of the evaluation window")->capture_default_str();
  fgen->final_callback([&] { action = [&] { return frozen_gen(fg); }; });

  FrozenCheck fc;
  auto* fcheck = leaf(frozen, "check", "Decide whether a coloring is frozen on a finite set");
  fcheck->add_option("--coloring", fc.coloring, "Coloring file (JSON)")->required()->check(CLI::ExistingFile);
  fcheck->add_option("--F", fc.sites, "Sites, e.g. 4,4;4,5 or box:3,3:5,5")->required();
  fcheck->add_option("--q", fc.q, "Colors")->required();
  fcheck->final_callback([&] { action = [&] { return frozen_check(fc); }; });

  FrozenObstruct fo;
  auto* fobs = leaf(frozen, "obstruct", "Edge-count obstruction to frozenness on a set");
  fobs->add_option("--d", fo.d, "Dimension")->required();
  fobs->add_option("--F", fo.sites, "Sites, e.g. 1,1;1,2 or box:1,1:3,3")->required();
  fobs->add_option("--q", fo.q, "Colors")->required();
  fobs->final_callback([&] { action = [&] { return frozen_obstruct(fo); }; });

  // listcolor
  auto* lc = app.add_subcommand("listcolor", "List coloring of cubes")->require_subcommand(1);
  ListSolve ls;
  std::uint64_t ls_seed = 0;
  auto* lsolve = leaf(lc, "solve", "List-color [n]^d");
  lsolve->add_option("--n", ls.n, "Cube side")->required();
  lsolve->add_option("--d", ls.d, "Dimension")->required();
  auto* lists_opt = lsolve->add_option("--lists", ls.lists, "Lists file (JSON)")->check(CLI::ExistingFile);
  auto* random_opt = lsolve->add_option("--random", ls_seed, "Random lists of size L(v) from this seed");
  lists_opt->excludes(random_opt);
  lsolve->add_option("--palette", ls.palette, "Palette for random lists (default 2(d+2))")->capture_default_str();
  lsolve->final_callback([&] {
    if (random_opt->count() == 0 && lists_opt->count() == 0)
      throw CLI::RequiredError("one of --lists or --random");
    if (random_opt->count() > 0) ls.seed = ls_seed;
    action = [&] { return listcolor_solve(ls); };
  });

  ListOrient lo;
  auto* lorient = leaf(lc, "orient", "Orientation with out-degree below L(v)");
  lorient->add_option("--n", lo.n, "Cube side")->required();
  lorient->add_option("--d", lo.d, "Dimension")->required();
  lorient->add_option("--cap", lo.cap, "Use min{L(v), cap} (0: no cap)")->capture_default_str();
  lorient->add_flag("--perimeter", lo.perimeter, "Perimeter cycle plus positive edges (d = 2)");
  lorient->final_callback([&] { action = [&] { return listcolor_orient(lo); }; });

  WitnessCube wc;
  auto* lwit = leaf(lc, "witness-cube", "Search for lists of size 2 on [n]^d with no list coloring");
  lwit->add_option("--n", wc.n, "Cube side")->capture_default_str();
  lwit->add_option("--d", wc.d, "Dimension")->capture_default_str();
  lwit->add_option("--palette", wc.palette, "Palette size")->capture_default_str();
  lwit->add_option("--list-size", wc.list_size, "List size")->capture_default_str();
  lwit->final_callback([&] { action = [&] { return listcolor_witness(wc, g.threads); }; });

  // fill
  auto* fill = app.add_subcommand("fill", "Extending boundary colorings")->require_subcommand(1);
  FillBox fb;
  auto* fbox = leaf(fill, "box", "Extend a boundary coloring into [n]^d");
  fbox->add_option("--n", fb.n, "Cube side")->required();
  fbox->add_option("--d", fb.d, "Dimension")->required();
  fbox->add_option("--q", fb.q, "Colors")->required();
  fbox->add_option("--boundary", fb.boundary, "Boundary coloring file (JSON)")->required()->check(CLI::ExistingFile);
  fbox->final_callback([&] { action = [&] { return fill_box_cmd(fb); }; });

  FillWitness fw;
  auto* fwit = leaf(fill, "witness", "A boundary coloring of [n]^d with no extension");
  fwit->add_option("--d", fw.d, "Dimension")->required();
  fwit->add_option("--q", fw.q, "Colors")->required();
  fwit->add_option("--n", fw.n, "Cube side")->required();
  fwit->final_callback([&] { action = [&] { return fill_witness(fw); }; });

  FillFep ff;
  auto* ffep = leaf(fill, "fep", "Extend u to a tiled window, keeping ubar near U");
  ffep->add_option("--u", ff.u, "Coloring of U (JSON)")->required()->check(CLI::ExistingFile);
  ffep->add_option("--ubar", ff.ubar, "Extension of u to U + B_2n (JSON)")->required()->check(CLI::ExistingFile);
  ffep->add_option("--n", ff.n, "Tile radius")->required();
  ffep->add_option("--q", ff.q, "Colors")->required();
  ffep->add_option("--window", ff.window, "Window B_{(2n+1)W+n}")->required();
  ffep->final_callback([&] { action = [&] { return fill_fep(ff); }; });

  // mixing
  auto* mix = app.add_subcommand("mixing", "Mixing witnesses and move graphs")->require_subcommand(1);
  Tssm ts;
  auto* mtssm = leaf(mix, "tssm", "Forcing along the tube configuration");
  mtssm->add_option("--d", ts.d, "Dimension")->required();
  mtssm->add_option("--q", ts.q, "Colors")->required();
  mtssm->add_option("--radius", ts.radius, "Window radius")->capture_default_str();
  mtssm->add_option("--exhaustive", ts.exhaustive, "Also run complete search on B_R (0: skip)")->capture_default_str();
  mtssm->final_callback([&] { action = [&] { return mixing_tssm(ts); }; });

  Si si;
  auto* msi = leaf(mix, "si", "Frozen boundary against a recolored center");
  msi->add_option("--d", si.d, "Dimension")->required();
  msi->add_option("--q", si.q, "Colors")->required();
  msi->add_option("--n", si.n, "Ball radius")->required();
  msi->final_callback([&] { action = [&] { return mixing_si(si); }; });

  Moves mv;
  auto* mmoves = leaf(mix, "moves", "Connectivity of a move graph on [N]^d");
  mmoves->add_option("--box", mv.box, "Box side")->required();
  mmoves->add_option("--d", mv.d, "Dimension")->required();
  mmoves->add_option("--q", mv.q, "Colors")->required();
  mmoves->add_option("--kind", mv.kind, "pivot | npivot:N | kempe")->capture_default_str();
  mmoves->add_option("--boundary", mv.boundary, "Boundary coloring file (JSON)")->check(CLI::ExistingFile);
  mmoves->add_option("--cap", mv.cap, "Largest state space to enumerate")->capture_default_str();
  mmoves->final_callback([&] { action = [&] { return mixing_moves(mv); }; });

  // census
  auto* cen = app.add_subcommand("census", "Counting and sampling")->require_subcommand(1);
  Count ct;
  auto* ccount = leaf(cen, "count", "Exact number of proper colorings of [n]^d");
  ccount->add_option("--n", ct.n, "Cube side")->required();
  ccount->add_option("--d", ct.d, "Dimension")->required();
  ccount->add_option("--q", ct.q, "Colors")->required();
  ccount->add_option("--boundary", ct.boundary, "Boundary coloring file (JSON)")->check(CLI::ExistingFile);
  ccount->add_flag("--frozen", ct.frozen, "Fix the boundary to the frozen coloring");
  ccount->add_option("--method", ct.method, "auto | tm | dfs")->capture_default_str();
  ccount->final_callback([&] { action = [&] { return census_count(ct); }; });

  Entropy en;
  auto* cent = leaf(cen, "entropy", "ln(count)/n^d for a range of n");
  cent->add_option("--d", en.d, "Dimension")->required();
  cent->add_option("--q", en.q, "Colors")->required();
  cent->add_option("--n-max", en.n_max, "Largest side")->required();
  cent->add_option("--n-min", en.n_min, "Smallest side")->capture_default_str();
  cent->add_flag("--frozen", en.frozen, "Fix the boundary to the frozen coloring");
  cent->final_callback([&] { action = [&] { return census_entropy(en, g.threads); }; });

  Sample sm;
  auto* csample = leaf(cen, "sample", "Heat-bath Glauber sample");
  csample->add_option("--n", sm.n, "Cube side")->required();
  csample->add_option("--d", sm.d, "Dimension")->required();
  csample->add_option("--q", sm.q, "Colors")->required();
  csample->add_option("--steps", sm.steps, "Sweeps")->required();
  csample->add_option("--seed", sm.seed, "Seed")->required();
  csample->add_option("--boundary", sm.boundary, "Boundary coloring file (JSON)")->check(CLI::ExistingFile);
  csample->final_callback([&] { action = [&] { return census_sample(sm); }; });

  std::vector<const char*> argv{"zdcolor"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  // The parsed chain: root, module, leaf.
  std::vector<const CLI::App*> chain{&app};
  for (const auto* s = &app; !s->get_subcommands().empty();) {
    s = s->get_subcommands().front();
    chain.push_back(s);
  }
  std::string command;
  for (std::size_t i = 1; i < chain.size(); ++i) command += (i > 1 ? " " : "") + chain[i]->get_name();

  Outcome outcome;
  try {
    outcome = action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Json manifest{{"tool", "zdcolor"}, {"version", version()}, {"command", command}, {"params", params_of(chain)}};
  std::string text;
  if (g.format == "json") {
    Json doc{{"manifest", manifest}, {"verdict", outcome.verdict}, {"result", outcome.result}};
    text = doc.dump(2) + "\n";
  } else if (g.format == "csv") {
    if (outcome.csv.empty()) {
      err << "error: " << command << " has no CSV output\n";
      return 2;
    }
    text = with_comment(outcome.csv, manifest.dump());
  } else {
    if (!outcome.picture) {
      err << "error: " << command << " has no two-dimensional picture to render\n";
      return 2;
    }
    if (g.format == "ascii") {
      text = with_comment(io::render_ascii(*outcome.picture), manifest.dump());
    } else {
      // comment goes right after the magic number
      auto pgm = io::render_pgm(*outcome.picture);
      text = pgm.substr(0, 3) + "# " + manifest.dump() + "\n" + pgm.substr(3);
    }
  }

  if (g.out.empty()) {
    out << text;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << g.out << "\n";
      return 2;
    }
    f << text;
  }
  return outcome.code;
}

}  // namespace zdcolor::cli
