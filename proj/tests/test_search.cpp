#include <doctest.h>

#include "zdcolor/search.hpp"

using namespace zdcolor;

namespace {
Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}
}  // namespace

TEST_CASE("counts match chromatic polynomials") {
  // (q-1)^n + (-1)^n (q-1) for the n-cycle
  CHECK(count_colorings(cycle(4), std::vector<ColorMask>(4, full_mask(3))) == 18);
  CHECK(count_colorings(cycle(5), std::vector<ColorMask>(5, full_mask(3))) == 30);
  CHECK(count_colorings(cycle(3), std::vector<ColorMask>(3, full_mask(2))) == 0);
  CHECK(count_colorings(Graph(3), std::vector<ColorMask>(3, full_mask(4))) == 64);
}

TEST_CASE("counts past 128 bits stay exact") {
  using boost::multiprecision::pow;
  Graph g(24);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  CHECK(count_colorings(g, std::vector<ColorMask>(24, full_mask(64))) == 64 * 63 * 63 * pow(BigInt(64), 21));
  CHECK(count_colorings(Graph(21), std::vector<ColorMask>(21, full_mask(64))) == pow(BigInt(64), 21));
}

TEST_CASE("enumeration respects domains and can stop early") {
  std::vector<ColorMask> dom{bit(0), full_mask(3), full_mask(3), full_mask(3)};
  std::uint64_t seen = 0;
  enumerate_colorings(cycle(4), dom, VarOrder::lexicographic, [&](std::span<const Color> f) {
    CHECK(f[0] == 0);
    ++seen;
    return true;
  });
  CHECK(seen == 6);
  auto n = enumerate_colorings(cycle(4), dom, VarOrder::lexicographic, [](auto) { return false; });
  CHECK(n == 1);
  CHECK_FALSE(find_coloring(cycle(3), std::vector<ColorMask>(3, full_mask(2))));
}

TEST_CASE("region problems pin inside sites and exclude outside ones") {
  Box b = Box::cube(2, 2);
  PartialColoring c(b.grown(1), 3);
  c.set(Coord{1, 1}, 2);
  c.set(Coord{0, 2}, 1);
  auto p = region_problem(b.sites(), 3, c);
  CHECK(p.domains[b.index(Coord{1, 1})] == bit(2));
  CHECK(p.domains[b.index(Coord{1, 2})] == (full_mask(3) & ~bit(1)));
  CHECK(p.domains[b.index(Coord{2, 2})] == full_mask(3));
}
