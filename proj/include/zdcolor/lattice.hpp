#ifndef ZDCOLOR_LATTICE_HPP
#define ZDCOLOR_LATTICE_HPP

// Geometry of finite windows of Z^d and colorings on them.
//
// Colors are 0-based integers {0, ..., q-1}. Every set of sites is a plain
// std::set<Coord>; the ambient graph for boundaries and edge counts is the
// full lattice Z^d unless a function says otherwise.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zdcolor {

using Color = int;
using Index = std::int64_t;

/// A point of Z^d.
class Coord {
 public:
  Coord() = default;
  Coord(std::initializer_list<Index> xs) : x_(xs) {}
  explicit Coord(std::vector<Index> xs) : x_(std::move(xs)) {}

  static Coord zero(int d) { return Coord(std::vector<Index>(d, 0)); }
  static Coord filled(int d, Index v) { return Coord(std::vector<Index>(d, v)); }
  static Coord unit(int d, int axis, Index sign = 1) {
    Coord c = zero(d);
    c.x_[axis] = sign;
    return c;
  }

  int dim() const { return static_cast<int>(x_.size()); }
  Index operator[](int k) const { return x_[k]; }
  Index& operator[](int k) { return x_[k]; }
  std::span<const Index> entries() const { return x_; }

  Index sum() const;
  /// Parity of the coordinate sum; true for even sites.
  bool even() const;

  Coord& operator+=(const Coord& o);
  Coord& operator-=(const Coord& o);
  friend Coord operator+(Coord a, const Coord& b) { return a += b; }
  friend Coord operator-(Coord a, const Coord& b) { return a -= b; }
  friend Coord operator*(Index s, Coord a);

  auto operator<=>(const Coord&) const = default;
  bool operator==(const Coord&) const = default;

  /// "1,2,3"
  std::string str() const;
  static Coord parse(const std::string& text);

 private:
  std::vector<Index> x_;
};

using CoordSet = std::set<Coord>;

Index l1_distance(const Coord& a, const Coord& b);
Index linf_distance(const Coord& a, const Coord& b);

/// Axis-aligned box with inclusive corners.
class Box {
 public:
  Box() = default;
  Box(Coord low, Coord high);

  /// [n]^d = {1..n}^d
  static Box cube(Index n, int d);
  /// B_n^d = {-n..n}^d
  static Box ball(Index n, int d);

  const Coord& low() const { return low_; }
  const Coord& high() const { return high_; }
  int dim() const { return low_.dim(); }
  Index extent(int axis) const { return high_[axis] - low_[axis] + 1; }
  std::size_t volume() const;

  bool contains(const Coord& c) const;
  bool contains(const Box& other) const;
  /// Strictly inside: contains c and all of its 2d neighbors.
  bool interior(const Coord& c) const;

  /// Row-major position (last axis fastest).
  std::size_t index(const Coord& c) const;
  Coord at(std::size_t index) const;

  Box translated(const Coord& shift) const;
  Box grown(Index margin) const;
  std::optional<Box> intersect(const Box& other) const;

  std::vector<Coord> sites() const;
  CoordSet site_set() const;

  bool operator==(const Box&) const = default;

 private:
  Coord low_;
  Coord high_;
};

/// Neighbors of v in Z^d that lie in the region, ordered +e_1..+e_d then -e_1..-e_d.
/// Throws std::domain_error if v is outside the region.
std::vector<Coord> neighbors(const Box& region, const Coord& v);
/// All 2d lattice neighbors, same order.
std::vector<Coord> lattice_neighbors(const Coord& v);

/// Sites of Z^d outside U that are adjacent to some site of U.
CoordSet external_boundary(const CoordSet& U);
CoordSet external_boundary(const Box& box);

struct EdgeCounts {
  std::size_t internal = 0;
  std::size_t crossing = 0;
};

/// |E_F| and |E(F, G \ F)| where G is Z^d, or the box when `within` is given.
EdgeCounts edge_counts(const CoordSet& F, const std::optional<Box>& within = std::nullopt);

/// An assignment of colors to some sites of a window. Propriety is not
/// enforced here; check it with is_proper.
class PartialColoring {
 public:
  PartialColoring(Box window, int q);
  PartialColoring(Box window, int q, std::map<Coord, Color> assignment);

  const Box& window() const { return window_; }
  int colors() const { return q_; }
  int dim() const { return window_.dim(); }
  const std::map<Coord, Color>& assignment() const { return assignment_; }
  std::size_t size() const { return assignment_.size(); }
  bool empty() const { return assignment_.empty(); }

  std::optional<Color> get(const Coord& c) const;
  bool has(const Coord& c) const { return assignment_.count(c) != 0; }
  void set(const Coord& c, Color color);
  void erase(const Coord& c) { assignment_.erase(c); }

  CoordSet support() const;
  PartialColoring restricted(const CoordSet& sites) const;
  PartialColoring with_window(Box window) const;

  bool operator==(const PartialColoring&) const = default;

 private:
  Box window_;
  int q_;
  std::map<Coord, Color> assignment_;
};

/// A total proper coloring of a box, stored densely in row-major order.
/// The constructor rejects out-of-range colors and monochromatic edges.
class ProperColoring {
 public:
  ProperColoring(Box box, int q, std::vector<Color> colors);

  const Box& box() const { return box_; }
  int colors() const { return q_; }
  int dim() const { return box_.dim(); }
  std::span<const Color> data() const { return colors_; }

  Color operator()(const Coord& c) const { return colors_[box_.index(c)]; }
  Color at(std::size_t index) const { return colors_[index]; }

  PartialColoring to_partial() const;
  PartialColoring restricted(const CoordSet& sites) const;

  bool operator==(const ProperColoring&) const = default;

 private:
  Box box_;
  int q_;
  std::vector<Color> colors_;
};

bool is_proper(const PartialColoring& c);
bool is_proper(const Box& box, std::span<const Color> colors);

/// Builds a dense coloring of `box` if `c` assigns every site of it.
std::optional<ProperColoring> densify(const PartialColoring& c, const Box& box);

/// Evaluates a rule (any callable Coord -> Color) on a box.
template <typename Rule>
ProperColoring paint(const Rule& rule, const Box& box, int q) {
  std::vector<Color> colors(box.volume());
  for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = rule(box.at(i));
  return ProperColoring(box, q, std::move(colors));
}

template <typename Rule>
PartialColoring paint_sites(const Rule& rule, const CoordSet& sites, const Box& window, int q) {
  PartialColoring out(window, q);
  for (const auto& s : sites) out.set(s, rule(s));
  return out;
}

/// Nonnegative remainder.
inline Index mod(Index a, Index m) {
  Index r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace zdcolor

#endif  // ZDCOLOR_LATTICE_HPP
