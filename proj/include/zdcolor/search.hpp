#ifndef ZDCOLOR_SEARCH_HPP
#define ZDCOLOR_SEARCH_HPP

// Exhaustive backtracking over proper colorings with per-vertex color
// domains. Forward checking prunes a branch as soon as some unassigned
// vertex has no color left.

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zdcolor/graph.hpp"
#include "zdcolor/lattice.hpp"

namespace zdcolor {

using BigInt = boost::multiprecision::cpp_int;
using ColorMask = std::uint64_t;

constexpr int kMaxColors = 64;

inline ColorMask full_mask(int q) { return q >= 64 ? ~ColorMask{0} : (ColorMask{1} << q) - 1; }
inline ColorMask bit(Color c) { return ColorMask{1} << c; }
inline int popcount(ColorMask m) { return std::popcount(m); }

enum class VarOrder {
  lexicographic,   ///< vertex index order; solutions come out lexicographically
  fewest_options,  ///< smallest remaining domain first
};

/// Visits every proper coloring with f(v) in domains[v]; `visit` returns
/// false to stop. Returns the number of solutions visited.
std::uint64_t enumerate_colorings(const Graph& graph, std::vector<ColorMask> domains, VarOrder order,
                                  const std::function<bool(std::span<const Color>)>& visit);

std::optional<std::vector<Color>> find_coloring(const Graph& graph, std::vector<ColorMask> domains,
                                                VarOrder order = VarOrder::fewest_options);

BigInt count_colorings(const Graph& graph, std::vector<ColorMask> domains);

/// Sites of a region with the domains induced by a constraint coloring:
/// constrained sites inside the region are pinned, constrained sites outside
/// it remove their color from adjacent region sites.
struct RegionProblem {
  SiteGraph sites;
  std::vector<ColorMask> domains;
};

RegionProblem region_problem(const std::vector<Coord>& region, int q, const PartialColoring& constraints);

}  // namespace zdcolor

#endif  // ZDCOLOR_SEARCH_HPP
