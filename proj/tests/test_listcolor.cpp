#include <doctest.h>

#include <algorithm>

#include "zdcolor/listcolor.hpp"

using namespace zdcolor;

namespace {

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Digraph directed_cycle(int n) {
  Digraph d(n);
  for (int i = 0; i < n; ++i) d.add_arc(i, (i + 1) % n);
  return d;
}

Graph random_graph(int n, int percent, SplitMix64& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (static_cast<int>(rng.below(100)) < percent) g.add_edge(u, v);
  return g;
}

// Brute force over all vertex subsets.
std::vector<std::vector<Vertex>> all_kernels(const Digraph& d) {
  std::vector<std::vector<Vertex>> out;
  const int n = d.size();
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<Vertex> k;
    for (int v = 0; v < n; ++v)
      if (m >> v & 1) k.push_back(v);
    if (is_kernel(d, k)) out.push_back(k);
  }
  return out;
}

}  // namespace

TEST_CASE("list bounds") {
  CHECK(list_bound(4, 2, Coord{1, 1}) == 2);
  CHECK(list_bound(4, 2, Coord{2, 2}) == 4);
  CHECK(list_bound(4, 2, Coord{2, 1}) == 3);
  CHECK(level(4, 2, Coord{2, 1}) == 1);
  CHECK_THROWS_AS(list_bound(4, 2, Coord{0, 1}), std::domain_error);
  auto b = list_bounds(3, 3);
  CHECK(b.size() == 27);
  CHECK(*std::max_element(b.begin(), b.end()) == 5);
}

TEST_CASE("subgraph inequality") {
  auto sq = SiteGraph::induced(Box::cube(2, 2));
  CHECK(check_subgraph_inequality(sq.graph, std::vector<char>(4, 1), std::vector<int>(4, 2)));
  auto cube = SiteGraph::induced(Box::cube(2, 3));
  CHECK_FALSE(check_subgraph_inequality(cube.graph, std::vector<char>(8, 1), std::vector<int>(8, 2)));
  std::vector<char> one(8, 0);
  one[3] = 1;
  CHECK(check_subgraph_inequality(cube.graph, one, std::vector<int>(8, 1)));
}

TEST_CASE("Hall orientations of cubes") {
  for (auto [n, d] : {std::pair{4, 2}, {5, 2}, {6, 2}, {5, 3}}) {
    auto sg = SiteGraph::induced(Box::cube(n, d));
    auto bounds = list_bounds(n, d);
    auto r = hall_orientation(sg.graph, bounds);
    REQUIRE(r.feasible());
    CHECK(orientation_respects(sg.graph, *r.orientation, bounds));
    CHECK_FALSE(has_odd_directed_cycle(r.orientation->digraph()));
  }
  auto cube = SiteGraph::induced(Box::cube(2, 3));
  auto bad = hall_orientation(cube.graph, list_bounds(2, 3));
  CHECK_FALSE(bad.feasible());
  CHECK(bad.hall_witness.size() == 8);

  auto sq = SiteGraph::induced(Box::cube(2, 2));
  auto ok = hall_orientation(sq.graph, std::vector<int>(4, 2));
  REQUIRE(ok.feasible());
  CHECK(ok.orientation->out_degree == std::vector<int>(4, 1));
}

TEST_CASE("Hall feasibility matches the subgraph inequality") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 3 + static_cast<int>(rng.below(10));
    auto g = random_graph(n, 20 + static_cast<int>(rng.below(50)), rng);
    std::vector<int> bound(n);
    for (auto& b : bound) b = 1 + static_cast<int>(rng.below(3));
    auto r = hall_orientation(g, bound);
    auto violation = find_inequality_violation(g, bound);
    CHECK(r.feasible() == !violation.has_value());
    if (r.feasible()) {
      CHECK(orientation_respects(g, *r.orientation, bound));
    } else {
      std::vector<char> members(n, 0);
      for (auto v : r.hall_witness) members[v] = 1;
      CHECK_FALSE(check_subgraph_inequality(g, members, bound));
    }
  }
}

TEST_CASE("odd directed cycles") {
  CHECK(has_odd_directed_cycle(directed_cycle(3)));
  CHECK_FALSE(has_odd_directed_cycle(directed_cycle(4)));
  CHECK(has_odd_directed_cycle(directed_cycle(5)));
  Digraph two(2);
  two.add_arc(0, 1);
  two.add_arc(1, 0);
  CHECK_FALSE(has_odd_directed_cycle(two));
}

TEST_CASE("kernels") {
  Digraph edge(2);
  edge.add_arc(0, 1);
  CHECK(find_kernel(edge) == std::vector<Vertex>{1});
  auto k4 = find_kernel(directed_cycle(4));
  CHECK((k4 == std::vector<Vertex>{0, 2} || k4 == std::vector<Vertex>{1, 3}));
  CHECK_THROWS_AS(find_kernel(directed_cycle(3)), std::domain_error);

  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(11));
    Digraph dag(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(3) == 0) dag.add_arc(v, u);
    auto kernels = all_kernels(dag);
    REQUIRE(kernels.size() == 1);
    CHECK(find_kernel(dag) == kernels.front());
  }
  // orientations of bipartite grids, cycles allowed
  for (int trial = 0; trial < 50; ++trial) {
    auto sg = SiteGraph::induced(Box::cube(3, 2));
    Digraph d(sg.graph.size());
    for (auto [u, v] : sg.graph.edges()) {
      auto r = rng.below(4);
      if (r != 0) d.add_arc(u, v);
      if (r != 1) d.add_arc(v, u);
    }
    CHECK(is_kernel(d, find_kernel(d)));
  }
}

TEST_CASE("kernel list coloring agrees with backtracking") {
  auto sg = SiteGraph::induced(Box::cube(4, 2));
  auto bounds = list_bounds(4, 2);
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto lists = random_lists(bounds, 6, rng);
    auto r = list_color(sg.graph, lists);
    REQUIRE(r.solved());
    CHECK(r.mode == ListColorMode::kernel);
    CHECK(respects_lists(sg.graph, lists, *r.colors));
    CHECK(backtrack_list_color(sg.graph, lists).has_value());
  }
}

TEST_CASE("full palettes and forced failures") {
  auto sg = SiteGraph::induced(Box::cube(3, 3));
  ListAssignment full(sg.graph.size(), ColorList{0, 1, 2, 3, 4, 5, 6});
  CHECK(list_color(sg.graph, full).solved());

  auto cube = SiteGraph::induced(Box::cube(2, 3));
  auto r = list_color(cube.graph, layered_cube_lists());
  CHECK_FALSE(r.solved());
  CHECK(r.mode == ListColorMode::backtracking);

  auto c4 = cycle(4);
  Orientation bad{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {1, 1, 1, 1}};
  CHECK_THROWS_AS(kernel_list_color(c4, ListAssignment(4, ColorList{0}), bad), std::domain_error);
}

TEST_CASE("perimeter cycle orientation keeps out-degree below min{L, 3}") {
  for (Index n = 3; n <= 7; ++n) {
    auto sg = SiteGraph::induced(Box::cube(n, 2));
    auto bounds = list_bounds(n, 2);
    for (auto& b : bounds) b = std::min(b, 3);
    auto o = perimeter_cycle_orientation(n);
    CHECK(orientation_respects(sg.graph, o, bounds));
    CHECK_FALSE(has_odd_directed_cycle(o.digraph()));
    SplitMix64 rng(static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 20; ++trial) {
      auto lists = random_lists(bounds, 5, rng);
      auto colors = kernel_list_color(sg.graph, lists, o);
      CHECK(respects_lists(sg.graph, lists, colors));
    }
  }
}

TEST_CASE("shell construction grows [n]^d to [n+1]^d") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto lists = random_lists(list_bounds(5, 2), 6, rng);
    auto c = grow_color(4, 2, lists, 6);
    REQUIRE(c);
    auto sg = SiteGraph::induced(Box::cube(5, 2));
    CHECK(respects_lists(sg.graph, lists, std::vector<Color>(c->data().begin(), c->data().end())));
  }
  auto shell = shell_color(4, 2, random_lists(list_bounds(5, 2), 6, rng), 6);
  REQUIRE(shell);
  CHECK(shell->size() == 9);
  auto line = shell_color(1, 1, ListAssignment{{0, 1}, {1, 2}}, 3);
  REQUIRE(line);
  CHECK(line->size() == 1);
}

TEST_CASE("induced subgraphs of large cubes satisfy the subgraph inequality") {
  SplitMix64 rng(77);
  for (auto [n, d] : {std::pair{4, 2}, {6, 2}, {8, 2}, {5, 3}}) {
    auto sg = SiteGraph::induced(Box::cube(n, d));
    auto bounds = list_bounds(n, d);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<char> members(sg.graph.size());
      auto p = rng.below(100);
      for (auto& m : members) m = rng.below(100) < p;
      CHECK(check_subgraph_inequality(sg.graph, members, bounds));
    }
  }
}

TEST_CASE("unlistable 3-cube") {
  auto s = search_unlistable(2, 3, 4, 2, 2);
  REQUIRE(s.witness);
  CHECK(s.assignments_checked == 279936);
  auto cube = SiteGraph::induced(Box::cube(2, 3));
  CHECK_FALSE(backtrack_list_color(cube.graph, *s.witness));
  for (const auto& l : *s.witness) CHECK(l.size() == 2);
  CHECK((*s.witness)[0] == ColorList{0, 1});

  auto e = enlargement_diagnostic(cube.graph, *s.witness, 4);
  CHECK(e.enlargements == 16);
  CHECK(e.satisfiable <= e.enlargements);

  auto flat = search_unlistable(2, 2, 4, 2, 1);
  CHECK_FALSE(flat.witness);
  CHECK(flat.witnesses_found == 0);
}

TEST_CASE("layered witness has the quoted layer colorings") {
  auto lists = layered_cube_lists();
  auto layer = SiteGraph::induced(Box::cube(2, 2));
  // bottom layer: sites (i, j, 1) are entries 0,2,4,6 in row-major order of [2]^3
  ListAssignment bottom{lists[0], lists[2], lists[4], lists[6]};
  std::vector<std::vector<Color>> found;
  enumerate_colorings(layer.graph, [&] {
    std::vector<ColorMask> m;
    for (const auto& l : bottom) m.push_back(to_mask(l));
    return m;
  }(), VarOrder::lexicographic, [&](std::span<const Color> f) {
    found.emplace_back(f.begin(), f.end());
    return true;
  });
  std::sort(found.begin(), found.end());
  // rows are the first coordinate: (1 0 / 0 2) and (0 2 / 1 0)
  CHECK(found == std::vector<std::vector<Color>>{{0, 2, 1, 0}, {1, 0, 0, 2}});
}
