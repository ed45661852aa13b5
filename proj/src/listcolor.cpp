#include "zdcolor/listcolor.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <thread>

namespace zdcolor {

ColorMask to_mask(const ColorList& list) {
  ColorMask m = 0;
  for (auto c : list) {
    if (c < 0 || c >= kMaxColors) throw std::domain_error("list color out of range");
    m |= bit(c);
  }
  return m;
}

ColorList to_list(ColorMask mask) {
  ColorList out;
  for (; mask; mask &= mask - 1) out.push_back(std::countr_zero(mask));
  return out;
}

int level(Index n, int d, const Coord& i) {
  if (i.dim() != d || !Box::cube(n, d).contains(i)) throw std::domain_error("site " + i.str() + " is outside [n]^d");
  int t = 0;
  for (int k = 0; k < d; ++k)
    if (1 < i[k] && i[k] < n) ++t;
  return t;
}

int list_bound(Index n, int d, const Coord& i) { return 2 + level(n, d, i); }

std::vector<int> list_bounds(Index n, int d) {
  Box box = Box::cube(n, d);
  std::vector<int> out(box.volume());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = list_bound(n, d, box.at(i));
  return out;
}

bool check_subgraph_inequality(const Graph& graph, const std::vector<char>& members, const std::vector<int>& bound) {
  long long slots = 0;
  for (Vertex v = 0; v < graph.size(); ++v)
    if (members[v]) slots += bound[v] - 1;
  return slots >= static_cast<long long>(graph.edges_within(members));
}

std::optional<std::vector<Vertex>> find_inequality_violation(const Graph& graph, const std::vector<int>& bound) {
  const int n = graph.size();
  if (n > 24) throw std::domain_error("exhaustive subgraph check is limited to 24 vertices");
  std::vector<char> members(n);
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
    for (int v = 0; v < n; ++v) members[v] = (s >> v) & 1;
    if (!check_subgraph_inequality(graph, members, bound)) {
      std::vector<Vertex> out;
      for (int v = 0; v < n; ++v)
        if (members[v]) out.push_back(v);
      return out;
    }
  }
  return std::nullopt;
}

Digraph Orientation::digraph() const {
  Digraph d(vertices);
  for (auto [t, h] : arcs) d.add_arc(t, h);
  return d;
}

OrientationResult hall_orientation(const Graph& graph, const std::vector<int>& bound) {
  const int n = graph.size();
  const auto& edges = graph.edges();
  const int m = static_cast<int>(edges.size());
  std::vector<int> cap(n), load(n, 0), owner(m, -1);
  for (Vertex v = 0; v < n; ++v) cap[v] = std::max(0, bound[v] - 1);
  // Per-vertex lists of edges currently matched to it.
  std::vector<std::vector<int>> held(n);

  auto other = [&](int e, Vertex v) { return edges[e].first == v ? edges[e].second : edges[e].first; };

  // Alternating search from the endpoints of edge e: a full vertex can pass
  // one of its edges to the other endpoint. Returns a reached vertex with a
  // free slot, or -1; `visited` keeps the reached set.
  std::vector<int> parent_edge(n, -1);
  auto search = [&](int e, std::vector<char>& visited) -> Vertex {
    std::deque<Vertex> queue;
    for (Vertex v : {edges[e].first, edges[e].second}) {
      if (visited[v]) continue;
      visited[v] = 1;
      parent_edge[v] = e;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      if (load[x] < cap[x]) return x;
      for (int f : held[x]) {
        Vertex y = other(f, x);
        if (visited[y]) continue;
        visited[y] = 1;
        parent_edge[y] = f;
        queue.push_back(y);
      }
    }
    return -1;
  };

  std::vector<int> unmatched;
  for (int e = 0; e < m; ++e) {
    std::vector<char> visited(n, 0);
    Vertex free_vertex = search(e, visited);
    // An edge with no augmenting path now never gets one later.
    if (free_vertex < 0) {
      unmatched.push_back(e);
      continue;
    }
    for (Vertex y = free_vertex;;) {
      int f = parent_edge[y];
      Vertex prev = owner[f];
      owner[f] = y;
      held[y].push_back(f);
      ++load[y];
      if (prev < 0) break;
      auto& h = held[prev];
      h.erase(std::find(h.begin(), h.end(), f));
      --load[prev];
      y = prev;
    }
  }

  if (!unmatched.empty()) {
    // Everything reachable from an unmatched edge is saturated; the union is
    // the largest deficient set.
    std::vector<char> visited(n, 0);
    for (int e : unmatched) search(e, visited);
    OrientationResult r;
    for (Vertex v = 0; v < n; ++v)
      if (visited[v]) r.hall_witness.push_back(v);
    return r;
  }

  Orientation o{n, {}, std::vector<int>(n, 0)};
  for (int e = 0; e < m; ++e) {
    Vertex tail = owner[e];
    o.arcs.emplace_back(tail, other(e, tail));
    ++o.out_degree[tail];
  }
  return {std::move(o), {}};
}

bool orientation_respects(const Graph& graph, const Orientation& o, const std::vector<int>& bound) {
  if (o.vertices != graph.size() || o.arcs.size() != graph.edges().size()) return false;
  std::vector<Edge> undirected, expected;
  std::vector<int> out(graph.size(), 0);
  for (auto [t, h] : o.arcs) {
    undirected.emplace_back(std::min(t, h), std::max(t, h));
    ++out[t];
  }
  for (auto [u, v] : graph.edges()) expected.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(undirected.begin(), undirected.end());
  std::sort(expected.begin(), expected.end());
  if (undirected != expected || out != o.out_degree) return false;
  for (Vertex v = 0; v < graph.size(); ++v)
    if (out[v] > bound[v] - 1) return false;
  return true;
}

Orientation perimeter_cycle_orientation(Index n) {
  if (n < 2) throw std::domain_error("need n >= 2");
  Box box = Box::cube(n, 2);
  auto on_perimeter = [&](const Coord& c) { return c[0] == 1 || c[0] == n || c[1] == 1 || c[1] == n; };
  // Counter-clockwise successor along the perimeter.
  auto next = [&](const Coord& c) -> Coord {
    if (c[1] == 1 && c[0] < n) return Coord{c[0] + 1, c[1]};
    if (c[0] == n && c[1] < n) return Coord{c[0], c[1] + 1};
    if (c[1] == n && c[0] > 1) return Coord{c[0] - 1, c[1]};
    return Coord{c[0], c[1] - 1};
  };
  const int size = static_cast<int>(box.volume());
  Orientation o{size, {}, std::vector<int>(size, 0)};
  auto add = [&](const Coord& t, const Coord& h) {
    auto ti = static_cast<Vertex>(box.index(t));
    o.arcs.emplace_back(ti, static_cast<Vertex>(box.index(h)));
    ++o.out_degree[ti];
  };
  for (const auto& v : box.sites()) {
    for (int k = 0; k < 2; ++k) {
      Coord w = v;
      w[k] += 1;
      if (!box.contains(w)) continue;
      if (on_perimeter(v) && on_perimeter(w) && (next(v) == w || next(w) == v)) {
        if (next(v) == w)
          add(v, w);
        else
          add(w, v);
      } else {
        add(v, w);
      }
    }
  }
  return o;
}

namespace {

// Two-colors the undirected graph formed by arcs inside `comp`; false on an odd cycle.
bool bipartition(const Digraph& d, const std::vector<Vertex>& comp, std::vector<int>& side) {
  std::vector<char> member(d.size(), 0);
  for (auto v : comp) member[v] = 1;
  std::vector<std::vector<Vertex>> und(d.size());
  for (auto v : comp)
    for (auto w : d.out(v))
      if (member[w]) {
        und[v].push_back(w);
        und[w].push_back(v);
      }
  for (auto start : comp) {
    if (side[start] >= 0) continue;
    side[start] = 0;
    std::vector<Vertex> stack{start};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (auto w : und[v]) {
        if (w == v) return false;
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          stack.push_back(w);
        } else if (side[w] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool has_odd_directed_cycle(const Digraph& d) {
  // A strongly connected digraph has an odd directed cycle iff its
  // underlying graph is not bipartite.
  std::vector<int> side(d.size(), -1);
  for (const auto& comp : d.strong_components()) {
    if (comp.size() == 1) {
      if (d.has_arc(comp[0], comp[0])) return true;
      continue;
    }
    if (!bipartition(d, comp, side)) return true;
  }
  return false;
}

namespace {

std::vector<Vertex> kernel_rec(const Digraph& d) {
  const int n = d.size();
  std::vector<char> in_kernel(n, 0);
  std::vector<int> side(n, -1);
  for (const auto& comp : d.strong_components()) {
    // Sinks first, so every arc leaving comp points at a finished vertex.
    std::vector<Vertex> open;
    for (auto v : comp) {
      bool absorbed = false;
      for (auto w : d.out(v))
        if (in_kernel[w]) {
          absorbed = true;
          break;
        }
      if (!absorbed) open.push_back(v);
    }
    if (open.empty()) continue;
    if (open.size() == comp.size()) {
      if (comp.size() == 1) {
        in_kernel[comp[0]] = 1;
        continue;
      }
      // Strongly connected and bipartite: the side holding comp[0] is a kernel
      // because every vertex has an out-arc, and it crosses sides.
      if (!bipartition(d, comp, side)) throw std::domain_error("digraph has an odd directed cycle");
      for (auto v : comp)
        if (side[v] == side[comp[0]]) in_kernel[v] = 1;
      continue;
    }
    for (auto local : kernel_rec(d.induced(open))) in_kernel[open[local]] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (in_kernel[v]) out.push_back(v);
  return out;
}

}  // namespace

std::vector<Vertex> find_kernel(const Digraph& d) {
  if (has_odd_directed_cycle(d)) throw std::domain_error("digraph has an odd directed cycle");
  return kernel_rec(d);
}

bool is_kernel(const Digraph& d, const std::vector<Vertex>& kernel) {
  std::vector<char> in(d.size(), 0);
  for (auto v : kernel) in[v] = 1;
  for (Vertex v = 0; v < d.size(); ++v) {
    bool absorbed = false;
    for (auto w : d.out(v)) {
      if (in[v] && in[w]) return false;
      if (in[w]) absorbed = true;
    }
    if (!in[v] && !absorbed) return false;
  }
  return true;
}

std::vector<Color> kernel_list_color(const Graph& graph, const ListAssignment& lists, const Orientation& orientation) {
  const int n = graph.size();
  if (static_cast<int>(lists.size()) != n || orientation.vertices != n) throw std::domain_error("size mismatch");
  std::vector<int> bound(n);
  for (Vertex v = 0; v < n; ++v) bound[v] = static_cast<int>(lists[v].size());
  if (!orientation_respects(graph, orientation, bound))
    throw std::domain_error("orientation is not an orientation of the graph with out-degree below list size");
  Digraph digraph = orientation.digraph();
  if (has_odd_directed_cycle(digraph)) throw std::domain_error("orientation has an odd directed cycle");

  std::vector<ColorMask> list(n);
  for (Vertex v = 0; v < n; ++v) list[v] = to_mask(lists[v]);
  std::vector<Color> color(n, -1);
  int remaining = n;
  while (remaining > 0) {
    // The color listed by the fewest uncolored vertices.
    Color pick = -1;
    int pick_count = std::numeric_limits<int>::max();
    for (Color c = 0; c < kMaxColors; ++c) {
      int count = 0;
      for (Vertex v = 0; v < n; ++v)
        if (color[v] < 0 && (list[v] & bit(c))) ++count;
      if (count > 0 && count < pick_count) {
        pick = c;
        pick_count = count;
      }
    }
    if (pick < 0) throw std::logic_error("uncolored vertex with an empty list");
    std::vector<Vertex> holders;
    for (Vertex v = 0; v < n; ++v)
      if (color[v] < 0 && (list[v] & bit(pick))) holders.push_back(v);
    std::vector<char> chosen(holders.size(), 0);
    for (auto k : kernel_rec(digraph.induced(holders))) chosen[k] = 1;
    for (std::size_t i = 0; i < holders.size(); ++i) {
      Vertex v = holders[i];
      if (chosen[i]) {
        color[v] = pick;
        --remaining;
      } else {
        list[v] &= ~bit(pick);
        if (list[v] == 0) throw std::logic_error("kernel step emptied a list");
      }
    }
  }
  return color;
}

std::optional<std::vector<Color>> backtrack_list_color(const Graph& graph, const ListAssignment& lists) {
  std::vector<ColorMask> domains(lists.size());
  for (std::size_t v = 0; v < lists.size(); ++v) domains[v] = to_mask(lists[v]);
  return find_coloring(graph, std::move(domains));
}

ListColoringResult list_color(const Graph& graph, const ListAssignment& lists,
                              const std::optional<Orientation>& orientation) {
  if (orientation) return {kernel_list_color(graph, lists, *orientation), ListColorMode::kernel};
  std::vector<int> bound(lists.size());
  for (std::size_t v = 0; v < lists.size(); ++v) bound[v] = static_cast<int>(lists[v].size());
  auto oriented = hall_orientation(graph, bound);
  if (oriented.feasible() && !has_odd_directed_cycle(oriented.orientation->digraph()))
    return {kernel_list_color(graph, lists, *oriented.orientation), ListColorMode::kernel};
  return {backtrack_list_color(graph, lists), ListColorMode::backtracking};
}

bool respects_lists(const Graph& graph, const ListAssignment& lists, const std::vector<Color>& colors) {
  if (colors.size() != lists.size() || static_cast<int>(colors.size()) != graph.size()) return false;
  for (std::size_t v = 0; v < colors.size(); ++v)
    if (!std::binary_search(lists[v].begin(), lists[v].end(), colors[v])) return false;
  for (auto [u, v] : graph.edges())
    if (colors[u] == colors[v]) return false;
  return true;
}

std::optional<PartialColoring> shell_color(Index n, int d, const ListAssignment& lists, int palette) {
  Box outer = Box::cube(n + 1, d);
  if (lists.size() != outer.volume()) throw std::domain_error("lists must cover [n+1]^d");
  PartialColoring out(outer, palette);

  // Subsets T of axes pinned to n+1, largest first: piece dimension d-|T| increases.
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t T = 1; T < (std::uint32_t{1} << d); ++T) subsets.push_back(T);
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](auto a, auto b) { return std::popcount(a) > std::popcount(b); });

  for (auto T : subsets) {
    Coord lo = Coord::filled(d, 1), hi = Coord::filled(d, n);
    for (int k = 0; k < d; ++k)
      if (T & (1u << k)) lo[k] = hi[k] = n + 1;
    auto sites = Box(lo, hi).sites();
    auto sg = SiteGraph::induced(sites);
    ListAssignment piece(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
      ColorMask m = to_mask(lists[outer.index(sites[i])]);
      for (const auto& w : lattice_neighbors(sites[i]))
        if (auto c = out.get(w)) m &= ~bit(*c);
      piece[i] = to_list(m);
      if (piece[i].empty()) return std::nullopt;
    }
    auto r = list_color(sg.graph, piece);
    if (!r.solved()) return std::nullopt;
    for (std::size_t i = 0; i < sites.size(); ++i) out.set(sites[i], (*r.colors)[i]);
  }
  return out;
}

std::optional<ProperColoring> grow_color(Index n, int d, const ListAssignment& lists, int palette) {
  auto shell = shell_color(n, d, lists, palette);
  if (!shell) return std::nullopt;
  Box outer = Box::cube(n + 1, d);
  auto sites = Box::cube(n, d).sites();
  auto sg = SiteGraph::induced(sites);
  ListAssignment inner(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    ColorMask m = to_mask(lists[outer.index(sites[i])]);
    for (const auto& w : lattice_neighbors(sites[i]))
      if (auto c = shell->get(w)) m &= ~bit(*c);
    inner[i] = to_list(m);
  }
  auto r = list_color(sg.graph, inner);
  if (!r.solved()) return std::nullopt;
  for (std::size_t i = 0; i < sites.size(); ++i) shell->set(sites[i], (*r.colors)[i]);
  return densify(*shell, outer);
}

UnlistableSearch search_unlistable(Index n, int d, int palette, int list_size, int threads) {
  if (list_size < 1 || list_size > palette || palette > 16) throw std::domain_error("bad palette or list size");
  Box box = Box::cube(n, d);
  auto sg = SiteGraph::induced(box);
  const int sites = sg.size();

  std::vector<ColorMask> choices;
  for (ColorMask m = 0; m < (ColorMask{1} << palette); ++m)
    if (popcount(m) == list_size) choices.push_back(m);
  // Lexicographic order of the sorted lists.
  std::sort(choices.begin(), choices.end(), [](ColorMask a, ColorMask b) { return to_list(a) < to_list(b); });
  const ColorMask first = full_mask(list_size);

  std::uint64_t total = 1;
  for (int s = 1; s < sites; ++s) {
    if (total > std::numeric_limits<std::uint64_t>::max() / choices.size()) throw std::domain_error("search too large");
    total *= choices.size();
  }

  threads = std::max(1, threads);
  struct Partial {
    std::uint64_t first_index = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t found = 0;
  };
  std::vector<Partial> partials(threads);
  auto decode = [&](std::uint64_t idx) {
    std::vector<ColorMask> domains(sites);
    domains[0] = first;
    for (int s = sites - 1; s >= 1; --s) {
      domains[s] = choices[idx % choices.size()];
      idx /= choices.size();
    }
    return domains;
  };
  auto work = [&](int t) {
    std::uint64_t lo = total * t / threads, hi = total * (t + 1) / threads;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if (!find_coloring(sg.graph, decode(idx))) {
        if (partials[t].found++ == 0) partials[t].first_index = idx;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();

  UnlistableSearch result;
  result.assignments_checked = total;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (const auto& p : partials) {
    result.witnesses_found += p.found;
    best = std::min(best, p.first_index);
  }
  if (result.witnesses_found > 0) {
    ListAssignment w;
    for (auto m : decode(best)) w.push_back(to_list(m));
    result.witness = std::move(w);
  }
  return result;
}

ListAssignment layered_cube_lists() {
  Box box = Box::cube(2, 3);
  ListAssignment lists(box.volume());
  auto put = [&](Index a, Index b, Index layer, ColorList l) { lists[box.index(Coord{a, b, layer})] = std::move(l); };
  put(1, 1, 1, {0, 1});
  put(1, 2, 1, {0, 2});
  put(2, 1, 1, {0, 1});
  put(2, 2, 1, {0, 2});
  put(1, 1, 2, {1, 2});
  put(1, 2, 2, {2, 3});
  put(2, 1, 2, {1, 2});
  put(2, 2, 2, {2, 3});
  return lists;
}

EnlargementReport enlargement_diagnostic(const Graph& graph, const ListAssignment& lists, int palette) {
  EnlargementReport r;
  for (std::size_t v = 0; v < lists.size(); ++v) {
    for (Color c = 0; c < palette; ++c) {
      if (std::binary_search(lists[v].begin(), lists[v].end(), c)) continue;
      auto enlarged = lists;
      enlarged[v].push_back(c);
      std::sort(enlarged[v].begin(), enlarged[v].end());
      ++r.enlargements;
      if (backtrack_list_color(graph, enlarged)) ++r.satisfiable;
    }
  }
  return r;
}

ListAssignment random_lists(const std::vector<int>& sizes, int palette, SplitMix64& rng) {
  ListAssignment out;
  out.reserve(sizes.size());
  std::vector<Color> deck(palette);
  for (int size : sizes) {
    if (size < 0 || size > palette) throw std::domain_error("list size exceeds the palette");
    for (int c = 0; c < palette; ++c) deck[c] = c;
    // partial Fisher-Yates
    for (int k = 0; k < size; ++k) std::swap(deck[k], deck[k + rng.below(palette - k)]);
    ColorList l(deck.begin(), deck.begin() + size);
    std::sort(l.begin(), l.end());
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace zdcolor
