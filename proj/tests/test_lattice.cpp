#include <doctest.h>

#include <algorithm>
#include <vector>

#include "zdcolor/frozen.hpp"
#include "zdcolor/lattice.hpp"

using namespace zdcolor;

TEST_CASE("coordinates parse, print and add") {
  Coord a = Coord::parse("1,-2,3");
  CHECK(a.dim() == 3);
  CHECK(a.str() == "1,-2,3");
  CHECK(a + Coord{1, 1, 1} == Coord{2, -1, 4});
  CHECK(a.sum() == 2);
  CHECK(a.even());
  CHECK(Coord::unit(2, 1, -1) == Coord{0, -1});
  CHECK_THROWS_AS(Coord::parse("1,x"), std::invalid_argument);
}

TEST_CASE("box indexing is row-major with the last axis fastest") {
  Box b = Box::cube(3, 2);
  CHECK(b.volume() == 9);
  CHECK(b.index(Coord{1, 2}) == 1);
  CHECK(b.index(Coord{2, 1}) == 3);
  for (std::size_t i = 0; i < b.volume(); ++i) CHECK(b.index(b.at(i)) == i);
  CHECK(Box::ball(2, 3).volume() == 125);
  CHECK(b.grown(1) == Box(Coord{0, 0}, Coord{4, 4}));
  auto meet = b.intersect(Box(Coord{3, 3}, Coord{5, 5}));
  REQUIRE(meet);
  CHECK(meet->volume() == 1);
  CHECK_FALSE(b.intersect(Box(Coord{4, 4}, Coord{5, 5})));
}

TEST_CASE("neighbors come in the order +e_1..+e_d, -e_1..-e_d") {
  Box b = Box::cube(3, 2);
  CHECK(neighbors(b, Coord{2, 2}) == std::vector<Coord>{{3, 2}, {2, 3}, {1, 2}, {2, 1}});
  CHECK(neighbors(b, Coord{1, 1}) == std::vector<Coord>{{2, 1}, {1, 2}});
  CHECK(neighbors(Box::cube(5, 3), Coord{3, 3, 3}).size() == 6);
  CHECK_THROWS_AS(neighbors(b, Coord{0, 1}), std::domain_error);
}

TEST_CASE("external boundary") {
  CHECK(external_boundary(CoordSet{Coord{0}}) == CoordSet{Coord{-1}, Coord{1}});
  CHECK(external_boundary(Box::cube(2, 2)).size() == 8);
  for (Index n = 1; n <= 6; ++n) CHECK(external_boundary(Box::cube(n, 2)).size() == static_cast<std::size_t>(4 * n));
  CHECK(external_boundary(CoordSet{}).empty());
  auto U = Box::cube(3, 3).site_set();
  for (const auto& v : external_boundary(U)) CHECK_FALSE(U.count(v));
}

TEST_CASE("edge counts") {
  auto e = edge_counts(Box::cube(2, 2).site_set());
  CHECK(e.internal == 4);
  CHECK(e.crossing == 8);
  for (Index n = 1; n <= 5; ++n) {
    auto f = edge_counts(Box::cube(n, 2).site_set());
    CHECK(f.internal == static_cast<std::size_t>(2 * n * (n - 1)));
    CHECK(f.crossing == static_cast<std::size_t>(4 * n));
  }
  auto g = edge_counts(CoordSet{Coord{0}});
  CHECK(g.internal == 0);
  CHECK(g.crossing == 2);
  // degree sum identity on an irregular set
  CoordSet F{{0, 0}, {1, 0}, {1, 1}, {3, 3}};
  auto h = edge_counts(F);
  CHECK(2 * h.internal + h.crossing == 4 * F.size());
  // restricted to a window, edges leaving it are dropped
  auto r = edge_counts(Box::cube(2, 2).site_set(), Box::cube(2, 2));
  CHECK(r.crossing == 0);
}

TEST_CASE("propriety") {
  CHECK(is_proper(Box::cube(3, 1), std::vector<Color>{0, 1, 0}));
  CHECK_FALSE(is_proper(Box::cube(2, 1), std::vector<Color>{0, 0}));
  auto x = paint(canonical_frozen(2), Box::cube(4, 2), 3);
  CHECK(is_proper(x.to_partial()));
  CHECK_THROWS_AS(ProperColoring(Box::cube(2, 1), 2, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ProperColoring(Box::cube(2, 1), 2, {0, 2}), std::invalid_argument);

  PartialColoring p(Box::cube(3, 2), 3);
  p.set(Coord{1, 1}, 0);
  p.set(Coord{1, 2}, 0);
  CHECK_FALSE(is_proper(p));
  p.erase(Coord{1, 2});
  CHECK(is_proper(p));
  CHECK_THROWS_AS(p.set(Coord{4, 1}, 0), std::domain_error);
  CHECK_THROWS_AS(p.set(Coord{1, 1}, 3), std::domain_error);
}

TEST_CASE("restriction keeps propriety and densify needs a total coloring") {
  auto x = paint(canonical_frozen(2), Box::cube(5, 2), 3);
  auto part = x.restricted(Box::cube(2, 2).site_set());
  CHECK(part.size() == 4);
  CHECK(is_proper(part));
  CHECK_FALSE(densify(part, Box::cube(3, 2)));
  auto back = densify(part, Box::cube(2, 2));
  REQUIRE(back);
  CHECK((*back)(Coord{2, 2}) == x(Coord{2, 2}));
}
