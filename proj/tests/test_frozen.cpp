#include <doctest.h>

#include <set>

#include "support.hpp"
#include "zdcolor/frozen.hpp"

using namespace zdcolor;

TEST_CASE("canonical frozen rule values") {
  auto x = canonical_frozen(2);
  CHECK(x.q == 3);
  CHECK(x(Coord{0, 0}) == 0);
  CHECK(x(Coord{1, 0}) == 1);
  CHECK(x(Coord{0, 1}) == 2);
  CHECK(x(Coord{1, 1}) == 0);
  CHECK(canonical_frozen(1)(Coord{5}) == 1);
  CHECK(is_proper(paint(canonical_frozen(3), Box::cube(5, 3), 4).to_partial()));
}

TEST_CASE("steps of the canonical rule along axis k shift the color by k") {
  for (int d = 1; d <= 3; ++d) {
    auto x = canonical_frozen(d);
    for (const auto& i : Box::cube(4, d).sites())
      for (int k = 0; k < d; ++k) CHECK(mod(x(i + Coord::unit(d, k)) - x(i), d + 1) == k + 1);
  }
}

TEST_CASE("lifting sums trailing coordinates") {
  auto y = lift_frozen(canonical_frozen(2), 3);
  for (const auto& i : Box::ball(2, 3).sites()) CHECK(y(i) == mod(i[0] + 2 * (i[1] + i[2]), 3));
  auto same = lift_frozen(canonical_frozen(2), 2);
  for (const auto& i : Box::ball(2, 2).sites()) CHECK(same(i) == canonical_frozen(2)(i));
  CHECK(is_proper(paint(lift_frozen(canonical_frozen(1), 3), Box::cube(4, 3), 2).to_partial()));
  CHECK_THROWS_AS(lift_frozen(canonical_frozen(3), 2), std::domain_error);
}

TEST_CASE("frozen on central sets") {
  auto x = paint(canonical_frozen(2), Box::cube(9, 2), 3);
  CHECK(is_frozen_on(x, Box(Coord{5, 5}, Coord{6, 6}).site_set(), 3));
  CHECK(is_frozen_on(x, CoordSet{}, 3));
  CHECK_THROWS_AS(is_frozen_on(x, CoordSet{Coord{1, 5}}, 3), std::domain_error);

  // lifted rule, F in one slice
  auto y = paint(frozen_rule(3, 3), Box::cube(7, 3), 3);
  CHECK(is_frozen_on(y, CoordSet{{4, 4, 4}, {4, 5, 4}, {5, 5, 4}}, 3));
  CHECK(is_frozen_on(y, CoordSet{{4, 4, 4}, {4, 4, 5}}, 3));
}

TEST_CASE("single-site frozen coloring") {
  auto x = single_site_frozen(2);
  CHECK(x.q == 5);
  std::set<Color> around;
  for (const auto& w : lattice_neighbors(Coord{0, 0})) around.insert(x(w));
  CHECK(around == std::set<Color>{1, 2, 3, 4});
  auto c = paint(x, Box::ball(4, 2), 5);
  CHECK(is_frozen_on(c, CoordSet{Coord{0, 0}}, 5));
  CHECK(single_site_frozen_property(x));
  CHECK(single_site_frozen_property(single_site_frozen(1)));

  // frozen on every singleton but not on some pair
  bool some_pair_moves = false;
  for (const auto& a : Box::ball(1, 2).sites())
    for (const auto& b : lattice_neighbors(a))
      if (!is_frozen_on(c, CoordSet{a, b}, 5)) some_pair_moves = true;
  CHECK(some_pair_moves);
}

TEST_CASE("single-site frozen rules exist for 2 <= q <= 2d") {
  for (int d = 1; d <= 3; ++d)
    for (int q = 2; q <= 2 * d + 1; ++q) {
      CAPTURE(d);
      CAPTURE(q);
      auto r = find_single_site_frozen(d, q);
      REQUIRE(r);
      CHECK(single_site_frozen_property(*r));
      CHECK(is_frozen_on(paint(*r, Box::ball(2, d), q), CoordSet{Coord::zero(d)}, q));
    }
  // 2d neighbors cannot rule out more than 2d colors
  CHECK_FALSE(find_single_site_frozen(2, 6));
}

TEST_CASE("edge-count obstruction") {
  auto sq2 = Box::cube(2, 2).site_set();
  CHECK(frozen_obstruction(sq2, 5));
  CHECK_FALSE(frozen_obstruction(sq2, 4));
  CHECK(frozen_obstruction(Box::cube(3, 2).site_set(), 4));
  CHECK_THROWS_AS(frozen_obstruction(CoordSet{}, 4), std::domain_error);
}

TEST_CASE("an obstructed set is never frozen") {
  auto F = Box(Coord{4, 4}, Coord{6, 6}).site_set();
  REQUIRE(frozen_obstruction(F, 4));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto c = testing::random_coloring(Box::cube(9, 2), 4, seed);
    auto alt = alternative_recoloring(c, F);
    REQUIRE(alt);
    CHECK(alt->size() == F.size());
    CHECK(kempe_move_within(c, F));
  }
}

TEST_CASE("Kempe chains on a path") {
  ProperColoring c(Box::cube(4, 1), 3, {0, 1, 0, 2});
  auto comps = kempe_components(c, {0, 1});
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].vertices == CoordSet{Coord{1}, Coord{2}, Coord{3}});
  auto s = kempe_swap(c, comps[0]);
  CHECK(std::vector<Color>(s.data().begin(), s.data().end()) == std::vector<Color>{1, 0, 1, 2});
  CHECK(kempe_swap(s, comps[0]) == c);
  ProperColoring other(Box::cube(4, 1), 3, {0, 2, 0, 2});
  CHECK_THROWS_AS(kempe_swap(other, comps[0]), std::domain_error);
}

TEST_CASE("Kempe swaps are proper involutions") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto c = testing::random_coloring(Box::cube(5, 2), 4, seed, 5);
    Color a = static_cast<Color>(seed % 4), b = static_cast<Color>((seed / 4 + 1 + seed % 4) % 4);
    if (a == b) b = (a + 1) % 4;
    auto comps = kempe_components(c, {a, b});
    REQUIRE_FALSE(comps.empty());
    const auto& k = comps[seed % comps.size()];
    auto once = kempe_swap(c, k);
    CHECK(is_proper(once.to_partial()));
    CHECK(kempe_swap(once, k) == c);
  }
}

TEST_CASE("bi-color components partition the edges at F") {
  auto F = Box(Coord{3, 3}, Coord{5, 5}).site_set();
  auto e = edge_counts(F);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = testing::random_coloring(Box::cube(7, 2), 4, seed);
    std::size_t edges = 0;
    for (const auto& k : bicolor_components(c, F)) edges += k.edges.size();
    CHECK(edges == e.internal + e.crossing);
  }
}
