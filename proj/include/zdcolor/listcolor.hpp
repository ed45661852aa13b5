#ifndef ZDCOLOR_LISTCOLOR_HPP
#define ZDCOLOR_LISTCOLOR_HPP

// List coloring through kernel-perfect orientations.
//
// An orientation whose out-degrees stay below the list sizes is found by
// matching every edge to one endpoint's spare slot; when no such matching
// exists the failing search returns a vertex set H with
// sum_{v in H} (L(v) - 1) < |E_H|. Digraphs without odd directed cycles have
// kernels in every induced subdigraph, which drives the coloring: take a
// color, color a kernel of the vertices that still list it, drop the color
// elsewhere, repeat.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "zdcolor/graph.hpp"
#include "zdcolor/lattice.hpp"
#include "zdcolor/rng.hpp"
#include "zdcolor/search.hpp"

namespace zdcolor {

/// Sorted, duplicate-free colors.
using ColorList = std::vector<Color>;
/// One list per vertex of a graph (or per site of a SiteGraph, same order).
using ListAssignment = std::vector<ColorList>;

ColorMask to_mask(const ColorList& list);
ColorList to_list(ColorMask mask);

/// 2 + #{k : 1 < i_k < n}. Throws std::domain_error outside [n]^d.
int list_bound(Index n, int d, const Coord& i);
std::vector<int> list_bounds(Index n, int d);  ///< per site of Box::cube(n, d), row-major
/// L_n^d(i) - 2, the number of strictly interior coordinates.
int level(Index n, int d, const Coord& i);

/// sum_{v in H} (L(v) - 1) >= |E_H| for the subgraph induced by `members`.
bool check_subgraph_inequality(const Graph& graph, const std::vector<char>& members, const std::vector<int>& bound);
/// Exhaustive over all nonempty vertex subsets; returns the first violator.
/// Only for graphs with at most 24 vertices.
std::optional<std::vector<Vertex>> find_inequality_violation(const Graph& graph, const std::vector<int>& bound);

struct Orientation {
  int vertices = 0;
  std::vector<Edge> arcs;  ///< (tail, head)
  std::vector<int> out_degree;

  Digraph digraph() const;
};

struct OrientationResult {
  std::optional<Orientation> orientation;
  /// Set when infeasible: vertices H with sum (L-1) < |E_H|, taken as
  /// everything reachable from the edges a maximum matching leaves out.
  std::vector<Vertex> hall_witness;

  bool feasible() const { return orientation.has_value(); }
};

/// Orients every edge so that out_degree(v) <= bound[v] - 1.
OrientationResult hall_orientation(const Graph& graph, const std::vector<int>& bound);
/// Checks out-degrees and that the arcs are exactly the graph's edges.
bool orientation_respects(const Graph& graph, const Orientation& o, const std::vector<int>& bound);

/// The perimeter of [n]^2 as one directed cycle, every other edge pointing
/// in the positive coordinate direction. Vertex order is Box::cube(n, 2).
Orientation perimeter_cycle_orientation(Index n);

bool has_odd_directed_cycle(const Digraph& d);
/// An independent set absorbing every other vertex through an out-arc.
/// Throws std::domain_error when the digraph has an odd directed cycle.
std::vector<Vertex> find_kernel(const Digraph& d);
bool is_kernel(const Digraph& d, const std::vector<Vertex>& kernel);

enum class ListColorMode { kernel, backtracking };

struct ListColoringResult {
  std::optional<std::vector<Color>> colors;
  ListColorMode mode = ListColorMode::kernel;

  bool solved() const { return colors.has_value(); }
};

/// Kernel-driven coloring along `orientation`. Requires |S_v| >= out_degree(v) + 1
/// and no odd directed cycle; throws std::domain_error otherwise.
std::vector<Color> kernel_list_color(const Graph& graph, const ListAssignment& lists, const Orientation& orientation);
/// Exhaustive search; nullopt when no list coloring exists.
std::optional<std::vector<Color>> backtrack_list_color(const Graph& graph, const ListAssignment& lists);
/// Uses `orientation` when given, otherwise orients with L(v) = |S_v|, and
/// falls back to backtracking when that fails or leaves an odd directed cycle.
ListColoringResult list_color(const Graph& graph, const ListAssignment& lists,
                              const std::optional<Orientation>& orientation = std::nullopt);
bool respects_lists(const Graph& graph, const ListAssignment& lists, const std::vector<Color>& colors);

/// Colors the shell [n+1]^d \ [n]^d from lists given on all of [n+1]^d, by
/// pieces {i : i_k = n+1 exactly for k in T}, each a copy of [n]^{d-|T|},
/// in increasing dimension. Colors of earlier pieces are removed from the
/// lists of later ones. Returns nullopt if some piece has no list coloring.
std::optional<PartialColoring> shell_color(Index n, int d, const ListAssignment& lists, int palette);
/// shell_color followed by the inner [n]^d: a full list coloring of [n+1]^d.
std::optional<ProperColoring> grow_color(Index n, int d, const ListAssignment& lists, int palette);

struct UnlistableSearch {
  std::optional<ListAssignment> witness;  ///< first witness in enumeration order
  std::uint64_t assignments_checked = 0;
  std::uint64_t witnesses_found = 0;
};

/// Enumerates all assignments of `list_size`-subsets of {0..palette-1} to the
/// sites of [n]^d with the first site's list fixed to {0..list_size-1}, and
/// reports those admitting no list coloring. Work is split across threads.
UnlistableSearch search_unlistable(Index n, int d, int palette, int list_size = 2, int threads = 1);

/// The 3-cube lists whose bottom layer [2]^2 x {1} has exactly the colorings
/// (1 0 / 0 2) and (0 2 / 1 0), and whose top layer [2]^2 x {2} has exactly
/// (1 2 / 2 3) and (2 3 / 1 2). Rows are the first coordinate.
ListAssignment layered_cube_lists();

/// Number of list colorings per single-site enlargement: for each vertex and
/// each color not in its list, whether the enlarged assignment is colorable.
struct EnlargementReport {
  int enlargements = 0;
  int satisfiable = 0;
};
EnlargementReport enlargement_diagnostic(const Graph& graph, const ListAssignment& lists, int palette);

/// Uniform random sizes[v]-subsets of {0..palette-1}. Throws std::domain_error
/// when a size exceeds the palette.
ListAssignment random_lists(const std::vector<int>& sizes, int palette, SplitMix64& rng);

}  // namespace zdcolor

#endif  // ZDCOLOR_LISTCOLOR_HPP
