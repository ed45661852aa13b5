#include "zdcolor/fill.hpp"

#include <algorithm>
#include <stdexcept>

#include "zdcolor/frozen.hpp"
#include "zdcolor/search.hpp"

namespace zdcolor {

void FillProblem::validate() const {
  if (boundary.colors() != q) throw std::domain_error("boundary palette does not match q");
  if (!boundary.window().contains(target)) throw std::domain_error("boundary window must contain the target box");
  if (!is_proper(boundary)) throw std::domain_error("boundary coloring is not proper");
  auto ring = external_boundary(target);
  for (const auto& [site, color] : boundary.assignment())
    if (!ring.count(site)) throw std::domain_error("boundary site " + site.str() + " is not on the external boundary");
}

ListAssignment boundary_lists(const FillProblem& problem) {
  const auto sites = problem.target.sites();
  ListAssignment out(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    ColorMask m = full_mask(problem.q);
    for (const auto& w : lattice_neighbors(sites[i]))
      if (auto c = problem.boundary.get(w)) m &= ~bit(*c);
    out[i] = to_list(m);
  }
  return out;
}

bool fill_guaranteed(const Box& target, int q) {
  const int d = target.dim();
  const Index n = target.extent(0);
  for (int k = 1; k < d; ++k)
    if (target.extent(k) != n) return false;
  return q >= d + 2 && n >= d + 2;
}

std::optional<PartialColoring> fill_box(const FillProblem& problem) {
  problem.validate();
  auto lists = boundary_lists(problem);
  for (const auto& l : lists)
    if (l.empty()) return std::nullopt;
  auto sg = SiteGraph::induced(problem.target);
  auto result = list_color(sg.graph, lists);
  if (!result.solved()) {
    if (fill_guaranteed(problem.target, problem.q))
      throw std::logic_error("fill failed inside the guaranteed regime");
    return std::nullopt;
  }
  PartialColoring out = problem.boundary;
  for (int v = 0; v < sg.size(); ++v) out.set(sg.sites[v], (*result.colors)[v]);
  return out;
}

FillProblem non_extendable_boundary(int d, int q, Index n) {
  if (q < 3 || q > d + 1) throw std::domain_error("non-extendable boundaries are built for 3 <= q <= d+1");
  if (n < 1) throw std::domain_error("need n >= 1");
  auto x = frozen_rule(d, q);
  Box target = Box::cube(n, d);
  PartialColoring c(target.grown(1), q);
  for (const auto& s : external_boundary(target)) {
    bool has_zero = false;
    for (int k = 0; k < d; ++k) has_zero = has_zero || s[k] == 0;
    if (has_zero) c.set(s, x(s));
  }
  Coord clash = Coord::filled(d, 1), inner = Coord::filled(d, 1);
  clash[0] = n + 1;
  inner[0] = n;
  c.set(clash, x(inner));
  return {target, std::move(c), q};
}

std::vector<Coord> minimal_anchors(std::vector<Coord> anchors, Index n) {
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  if (anchors.empty()) return anchors;
  const int d = anchors.front().dim();
  auto box_of = [&](const Coord& a) { return Box::cube(n, d).translated(a); };
  // Drop, in order, any box already covered by the remaining ones.
  for (std::size_t i = 0; i < anchors.size();) {
    Box b = box_of(anchors[i]);
    bool covered = true;
    for (const auto& s : b.sites()) {
      bool hit = false;
      for (std::size_t j = 0; j < anchors.size() && !hit; ++j)
        if (j != i && box_of(anchors[j]).contains(s)) hit = true;
      if (!hit) {
        covered = false;
        break;
      }
    }
    if (covered)
      anchors.erase(anchors.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return anchors;
}

std::optional<PartialColoring> fill_union(std::vector<Coord> anchors, Index n, const PartialColoring& boundary, int q) {
  anchors = minimal_anchors(std::move(anchors), n);
  if (anchors.empty()) return boundary;
  const int d = anchors.front().dim();
  std::vector<Box> boxes;
  CoordSet U;
  for (const auto& a : anchors) {
    boxes.push_back(Box::cube(n, d).translated(a));
    if (!boundary.window().contains(boxes.back())) throw std::domain_error("boundary window must contain the union");
    for (auto& s : boxes.back().sites()) U.insert(std::move(s));
  }
  if (!is_proper(boundary)) throw std::domain_error("boundary coloring is not proper");
  auto ring = external_boundary(U);
  for (const auto& [site, color] : boundary.assignment())
    if (!ring.count(site)) throw std::domain_error("boundary site " + site.str() + " is not on the union's boundary");

  PartialColoring colored = boundary;
  for (std::size_t s = 0; s < boxes.size(); ++s) {
    // Earlier fills inside the still-open part of U are provisional.
    for (std::size_t t = s; t < boxes.size(); ++t)
      for (const auto& site : boxes[t].sites()) colored.erase(site);
    FillProblem p{boxes[s], colored.restricted(external_boundary(boxes[s])), q};
    auto filled = fill_box(p);
    if (!filled) return std::nullopt;
    for (const auto& site : boxes[s].sites()) colored.set(site, *filled->get(site));
  }
  return colored;
}

namespace {

Index floor_div(Index a, Index b) { return (a - mod(a, b)) / b; }

}  // namespace

std::vector<Coord> tile_centers(const Box& window, Index n) {
  const int d = window.dim();
  const Index side = 2 * n + 1;
  Coord lo = Coord::zero(d), hi = Coord::zero(d);
  for (int k = 0; k < d; ++k) {
    lo[k] = floor_div(window.low()[k] + n, side);
    hi[k] = floor_div(window.high()[k] + n, side);
  }
  std::vector<Coord> out;
  for (const auto& k : Box(lo, hi).sites()) out.push_back(side * k);
  return out;
}

std::vector<Coord> tiles_meeting(const CoordSet& U, Index n) {
  const Index side = 2 * n + 1;
  std::set<Coord> centers;
  for (const auto& u : U) {
    Coord c = u;
    for (int k = 0; k < u.dim(); ++k) c[k] = side * floor_div(u[k] + n, side);
    centers.insert(c);
  }
  return {centers.begin(), centers.end()};
}

Box tiled_window(int d, Index n, Index w) { return Box::ball((2 * n + 1) * w + n, d); }

std::optional<ProperColoring> fep_extend(const PartialColoring& u, const PartialColoring& ubar, int q, Index n,
                                         const Box& window) {
  const int d = window.dim();
  const Box tile = Box::ball(n, d);
  auto centers = tile_centers(window, n);
  for (const auto& c : centers)
    if (!window.contains(tile.translated(c))) throw std::domain_error("window must be a union of whole tiles");
  for (const auto& [site, color] : u.assignment()) {
    auto other = ubar.get(site);
    if (!other || *other != color) throw std::domain_error("ubar does not extend u at " + site.str());
  }
  if (!is_proper(ubar)) throw std::domain_error("ubar is not proper");

  auto kept = tiles_meeting(u.support(), n);
  PartialColoring colored(window, q);
  CoordSet kept_sites;
  for (const auto& c : kept) {
    if (!window.contains(tile.translated(c))) throw std::domain_error("a tile meeting U leaves the window");
    for (const auto& s : tile.translated(c).sites()) {
      auto color = ubar.get(s);
      if (!color) throw std::domain_error("ubar must cover every tile meeting U; missing " + s.str());
      colored.set(s, *color);
      kept_sites.insert(s);
    }
  }
  std::vector<Coord> anchors;
  CoordSet rest;
  for (const auto& c : centers) {
    if (std::binary_search(kept.begin(), kept.end(), c)) continue;
    anchors.push_back(c - Coord::filled(d, n + 1));
    for (auto& s : tile.translated(c).sites()) rest.insert(std::move(s));
  }
  if (anchors.empty()) return densify(colored, window);
  auto filled = fill_union(anchors, 2 * n + 1, colored.restricted(external_boundary(rest)), q);
  if (!filled) return std::nullopt;
  for (const auto& s : rest) colored.set(s, *filled->get(s));
  return densify(colored, window);
}

PartialColoring random_boundary(const Box& box, int q, double density, SplitMix64& rng) {
  PartialColoring out(box.grown(1), q);
  // density in 1/2^20 steps keeps the draw integral
  const auto threshold = static_cast<std::uint64_t>(density * (1 << 20));
  for (const auto& site : external_boundary(box)) {
    if (rng.below(1 << 20) >= threshold) continue;
    ColorMask free = full_mask(q);
    for (const auto& w : lattice_neighbors(site))
      if (auto c = out.get(w)) free &= ~bit(*c);
    if (!free) continue;
    auto k = rng.below(static_cast<std::uint64_t>(popcount(free)));
    for (; k > 0; --k) free &= free - 1;
    out.set(site, std::countr_zero(free));
  }
  return out;
}

}  // namespace zdcolor
