#include "zdcolor/frozen.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "zdcolor/search.hpp"

namespace zdcolor {

Color LinearColoringRule::operator()(const Coord& i) const {
  if (i.dim() != d) throw std::domain_error("coordinate dimension does not match the rule");
  Index s = offset;
  for (int k = 0; k < d; ++k) s += weights[k] * i[k];
  return static_cast<Color>(mod(s, q));
}

bool LinearColoringRule::proper() const {
  for (auto w : weights)
    if (mod(w, q) == 0) return false;
  return true;
}

Color LiftedColoringRule::operator()(const Coord& i) const {
  if (i.dim() != dim()) throw std::domain_error("coordinate dimension does not match the rule");
  Coord folded = Coord::zero(base.d);
  for (int k = 0; k < base.d; ++k) folded[k] = i[k];
  for (int k = base.d; k < dim(); ++k) folded[base.d - 1] += i[k];
  return base(folded);
}

LinearColoringRule canonical_frozen(int d) {
  if (d < 1) throw std::domain_error("dimension must be >= 1");
  LinearColoringRule r{d, d + 1, {}, 0};
  for (int k = 1; k <= d; ++k) r.weights.push_back(k);
  return r;
}

LiftedColoringRule lift_frozen(const LinearColoringRule& base, int target_d) {
  if (target_d < base.d) throw std::domain_error("cannot lift to a smaller dimension");
  return {base, target_d - base.d};
}

LiftedColoringRule frozen_rule(int d, int q) {
  if (q < 2 || q > d + 1) throw std::domain_error("frozen colorings exist only for 2 <= q <= d+1");
  return lift_frozen(canonical_frozen(q - 1), d);
}

LinearColoringRule single_site_frozen(int d) {
  auto r = canonical_frozen(d);
  r.q = 2 * d + 1;
  return r;
}

bool single_site_frozen_property(const LinearColoringRule& rule) {
  // Translation invariance reduces the check to the origin.
  if (!rule.proper()) return false;
  ColorMask seen = 0;
  for (auto w : rule.weights) seen |= bit(static_cast<Color>(mod(w, rule.q))) | bit(static_cast<Color>(mod(-w, rule.q)));
  return seen == (full_mask(rule.q) & ~ColorMask{1});
}

std::optional<LinearColoringRule> find_single_site_frozen(int d, int q) {
  if (d < 1 || q < 2 || q > kMaxColors) throw std::domain_error("need d >= 1 and 2 <= q <= 64");
  LinearColoringRule r{d, q, std::vector<Index>(d, 1), 0};
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == d) return single_site_frozen_property(r);
    for (Index w = 1; w < q; ++w) {
      r.weights[k] = w;
      if (rec(k + 1)) return true;
    }
    return false;
  };
  if (rec(0)) return r;
  return std::nullopt;
}

namespace {

void require_inside(const Box& window, const CoordSet& F) {
  for (const auto& f : F)
    if (!window.interior(f))
      throw std::domain_error("site " + f.str() + " or one of its neighbors lies outside the window");
}

}  // namespace

std::optional<PartialColoring> alternative_recoloring(const ProperColoring& c, const CoordSet& F) {
  require_inside(c.box(), F);
  if (F.empty()) return std::nullopt;
  std::vector<Coord> region(F.begin(), F.end());
  CoordSet fixed = external_boundary(F);
  auto problem = region_problem(region, c.colors(), c.restricted(fixed));
  std::optional<PartialColoring> out;
  enumerate_colorings(problem.sites.graph, problem.domains, VarOrder::lexicographic, [&](std::span<const Color> f) {
    for (std::size_t i = 0; i < region.size(); ++i) {
      if (f[i] != c(region[i])) {
        PartialColoring alt(c.box(), c.colors());
        for (std::size_t j = 0; j < region.size(); ++j) alt.set(region[j], f[j]);
        out = std::move(alt);
        return false;
      }
    }
    return true;
  });
  return out;
}

bool is_frozen_on(const ProperColoring& c, const CoordSet& F, int q) {
  if (q != c.colors()) throw std::domain_error("q does not match the coloring");
  return !alternative_recoloring(c, F).has_value();
}

bool frozen_obstruction(const CoordSet& F, int q) {
  if (F.empty()) throw std::domain_error("F must be nonempty");
  auto e = edge_counts(F);
  return static_cast<std::size_t>(q - 1) * F.size() > e.internal + e.crossing;
}

namespace {

// Components of the two-colored part of `vertices`, using only edges accepted by `edge_ok`.
std::vector<KempeComponent> components_for_pair(const ProperColoring& c, const CoordSet& vertices,
                                                std::pair<Color, Color> pair,
                                                const std::function<bool(const Coord&, const Coord&)>& edge_ok) {
  auto [a, b] = pair;
  std::vector<KempeComponent> out;
  CoordSet seen;
  for (const auto& start : vertices) {
    Color col = c(start);
    if ((col != a && col != b) || seen.count(start)) continue;
    KempeComponent comp{pair, {}, {}};
    std::vector<Coord> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      Coord v = stack.back();
      stack.pop_back();
      comp.vertices.insert(v);
      for (auto& w : lattice_neighbors(v)) {
        if (!vertices.count(w) || !edge_ok(v, w)) continue;
        Color cw = c(w);
        if (cw != a && cw != b) continue;
        if (v < w) comp.edges.emplace_back(v, w);
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

std::vector<KempeComponent> kempe_components(const ProperColoring& c, std::pair<Color, Color> color_pair) {
  auto [a, b] = color_pair;
  if (a == b || a < 0 || b < 0 || a >= c.colors() || b >= c.colors())
    throw std::domain_error("color pair must be two distinct colors of the palette");
  return components_for_pair(c, c.box().site_set(), color_pair, [](const Coord&, const Coord&) { return true; });
}

ProperColoring kempe_swap(const ProperColoring& c, const KempeComponent& component) {
  auto [a, b] = component.color_pair;
  std::vector<Color> colors(c.data().begin(), c.data().end());
  for (const auto& v : component.vertices) {
    if (!c.box().contains(v)) throw std::domain_error("component leaves the coloring's box");
    Color& col = colors[c.box().index(v)];
    if (col == a)
      col = b;
    else if (col == b)
      col = a;
    else
      throw std::domain_error("component does not match the coloring at " + v.str());
  }
  // A stale component can still make the swap improper; the constructor rejects that.
  try {
    return ProperColoring(c.box(), c.colors(), std::move(colors));
  } catch (const std::invalid_argument&) {
    throw std::domain_error("component is not a bi-color component of the coloring");
  }
}

std::vector<KempeComponent> bicolor_components(const ProperColoring& c, const CoordSet& F) {
  require_inside(c.box(), F);
  CoordSet vertices = F;
  for (auto& b : external_boundary(F)) vertices.insert(b);
  auto edge_ok = [&](const Coord& u, const Coord& v) { return F.count(u) || F.count(v); };
  std::vector<KempeComponent> out;
  for (Color a = 0; a < c.colors(); ++a)
    for (Color b = a + 1; b < c.colors(); ++b)
      for (auto& comp : components_for_pair(c, vertices, {a, b}, edge_ok)) out.push_back(std::move(comp));
  return out;
}

std::optional<KempeComponent> kempe_move_within(const ProperColoring& c, const CoordSet& F) {
  for (auto& comp : bicolor_components(c, F)) {
    bool inside = true;
    for (const auto& v : comp.vertices)
      if (!F.count(v)) {
        inside = false;
        break;
      }
    if (inside) return comp;
  }
  return std::nullopt;
}

}  // namespace zdcolor
