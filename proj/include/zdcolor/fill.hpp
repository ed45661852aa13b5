#ifndef ZDCOLOR_FILL_HPP
#define ZDCOLOR_FILL_HPP

// Extending partial colorings of a boundary into boxes, unions of boxes,
// and whole windows.

#include <optional>
#include <vector>

#include "zdcolor/lattice.hpp"
#include "zdcolor/listcolor.hpp"

namespace zdcolor {

/// A box to fill and a proper partial coloring of (part of) its external boundary.
struct FillProblem {
  Box target;
  PartialColoring boundary;
  int q;

  /// Checks that the boundary is proper and supported on the external boundary.
  void validate() const;
};

/// S(i) = palette minus the colors of i's colored boundary neighbors, per
/// site of the target in row-major order.
ListAssignment boundary_lists(const FillProblem& problem);

/// True when the target is a cube of side n with q >= d+2 and n >= d+2,
/// where every proper boundary coloring extends.
bool fill_guaranteed(const Box& target, int q);

/// Extends the boundary coloring into the target. The result is a partial
/// coloring of target + support on the boundary's window; nullopt means the
/// boundary coloring has no extension.
std::optional<PartialColoring> fill_box(const FillProblem& problem);

/// A boundary coloring of [n]^d that cannot be extended: the frozen pattern
/// on the boundary sites with some zero coordinate, plus the site
/// (n+1, 1, ..., 1) colored like its inner neighbor. Requires 3 <= q <= d+1.
FillProblem non_extendable_boundary(int d, int q, Index n);

/// Extends `boundary` (supported on the boundary of the union) into the union
/// of the boxes anchor + [n]^d, box by box in lexicographic anchor order.
std::optional<PartialColoring> fill_union(std::vector<Coord> anchors, Index n, const PartialColoring& boundary, int q);
/// Anchors whose boxes are covered by the others are dropped.
std::vector<Coord> minimal_anchors(std::vector<Coord> anchors, Index n);

/// Translates c + B_n for c in (2n+1)Z^d partition Z^d. Returns the tile
/// centers meeting `window`.
std::vector<Coord> tile_centers(const Box& window, Index n);
/// Centers of tiles meeting U.
std::vector<Coord> tiles_meeting(const CoordSet& U, Index n);

/// Extends u (on U) to the whole window: the given extension ubar (defined on
/// U + B_2n) is kept on the tiles meeting U and every other tile of the
/// window is filled. The window must be a union of tiles.
std::optional<ProperColoring> fep_extend(const PartialColoring& u, const PartialColoring& ubar, int q, Index n,
                                         const Box& window);
/// A random proper partial coloring of the external boundary of `box`: sites
/// are visited in order, each left blank with probability 1 - density, else
/// given a uniform color among those its colored neighbors leave free.
PartialColoring random_boundary(const Box& box, int q, double density, SplitMix64& rng);

/// The window B_{(2n+1)w + n}: (2w+1)^d whole tiles.
Box tiled_window(int d, Index n, Index w);

}  // namespace zdcolor

#endif  // ZDCOLOR_FILL_HPP
