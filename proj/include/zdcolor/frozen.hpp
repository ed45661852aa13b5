#ifndef ZDCOLOR_FROZEN_HPP
#define ZDCOLOR_FROZEN_HPP

// Frozen and single-site frozen colorings of Z^d, exhaustive frozenness
// checks on finite sets, the edge-count obstruction, and Kempe chains.

#include <optional>
#include <utility>
#include <vector>

#include "zdcolor/lattice.hpp"

namespace zdcolor {

/// x_i = offset + sum_k weights[k] * i_k  (mod q)
struct LinearColoringRule {
  int d = 1;
  int q = 2;
  std::vector<Index> weights;
  Index offset = 0;

  Color operator()(const Coord& i) const;
  int dim() const { return d; }
  int colors() const { return q; }
  /// Every weight nonzero mod q, which is exactly what propriety needs.
  bool proper() const;
};

/// A rule on Z^r lifted to Z^{r+folds}: the trailing coordinates are summed
/// into coordinate r before the base rule is applied.
struct LiftedColoringRule {
  LinearColoringRule base;
  int folds = 0;

  Color operator()(const Coord& i) const;
  int dim() const { return base.d + folds; }
  int colors() const { return base.q; }
};

/// q = d+1, weights (1..d).
LinearColoringRule canonical_frozen(int d);
/// Throws std::domain_error when target_d < base.d.
LiftedColoringRule lift_frozen(const LinearColoringRule& base, int target_d);
/// The frozen q-coloring of Z^d for 2 <= q <= d+1: canonical_frozen(q-1) lifted to d.
LiftedColoringRule frozen_rule(int d, int q);
/// q = 2d+1, weights (1..d).
LinearColoringRule single_site_frozen(int d);
/// Searches weight vectors in [1, q)^d for a proper linear rule whose 2d
/// neighbor colors exclude exactly the center color at every site.
std::optional<LinearColoringRule> find_single_site_frozen(int d, int q);
/// Checks the single-site frozen property of a linear rule directly.
bool single_site_frozen_property(const LinearColoringRule& rule);

/// A proper recoloring of F that keeps c fixed off F and differs from c on F,
/// if one exists. Requires F and its boundary inside c's box.
std::optional<PartialColoring> alternative_recoloring(const ProperColoring& c, const CoordSet& F);
/// True iff c|_F is the only proper filling of F given c off F.
/// Throws std::domain_error when F or its boundary touches the window edge.
bool is_frozen_on(const ProperColoring& c, const CoordSet& F, int q);

/// (q-1)|F| > |E_F| + |E(F, Z^d \ F)|: when true, no q-coloring is frozen on F.
bool frozen_obstruction(const CoordSet& F, int q);

struct KempeComponent {
  std::pair<Color, Color> color_pair;
  CoordSet vertices;
  std::vector<std::pair<Coord, Coord>> edges;
};

/// Connected components of the subgraph induced by the two colors, within
/// c's box. Vertices of either color with no partner are singletons.
std::vector<KempeComponent> kempe_components(const ProperColoring& c, std::pair<Color, Color> color_pair);
/// Exchanges the pair's colors on the component. Throws std::domain_error if
/// the component does not match c.
ProperColoring kempe_swap(const ProperColoring& c, const KempeComponent& component);

/// All bi-color components of the graph with vertices F + dF and edges
/// E_F + E(F, dF), over every color pair. F + dF must lie in c's box.
std::vector<KempeComponent> bicolor_components(const ProperColoring& c, const CoordSet& F);
/// A bi-color component lying entirely inside F, if any; swapping it is a
/// Kempe move that changes c only on F.
std::optional<KempeComponent> kempe_move_within(const ProperColoring& c, const CoordSet& F);

}  // namespace zdcolor

#endif  // ZDCOLOR_FROZEN_HPP
