#include "zdcolor/mixing.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>

namespace zdcolor {

Coord signed_unit(int d, int t) {
  if (t < 1 || t > 2 * d) throw std::domain_error("unit vector index out of range");
  if (t <= d) return Coord::unit(d, t - 1, 1);
  return Coord::unit(d, 2 * d - t, -1);
}

bool TubeRule::on_tube(const Coord& i) const {
  int off = 0;
  for (int k = 1; k < d; ++k) {
    if (i[k] == 0) continue;
    if (i[k] != 1 && i[k] != -1) return false;
    ++off;
  }
  return off == 1;
}

Color TubeRule::operator()(const Coord& i) const {
  if (i.dim() != d) throw std::domain_error("coordinate dimension does not match the rule");
  if (on_tube(i)) {
    const Index m = i[0];
    int t = 0;
    for (int k = 1; k < d; ++k) {
      if (i[k] == 1) t = k + 1;
      if (i[k] == -1) t = 2 * d - k;
    }
    return static_cast<Color>(mod(m + t, q - 2));
  }
  const bool odd = !i.even();
  return (odd != swapped) ? q - 2 : q - 1;
}

CoordSet MixingWitness::tube(Index radius) const {
  CoordSet out;
  for (Index m = -radius; m <= radius; ++m)
    for (int t = 2; t <= 2 * d - 1; ++t) out.insert(Coord::unit(d, 0, m) + signed_unit(d, t));
  return out;
}

MixingWitness tube_candidate(int d, int q, Index n) {
  if (d < 2 || q < 4) throw std::domain_error("the tube construction needs d >= 2 and q >= 4");
  return {TubeRule{d, q, false}, TubeRule{d, q, true}, d, q, n};
}

MixingWitness tssm_witness(int d, int q, Index n) {
  if (q < d + 2 || q > 2 * d) throw std::domain_error("the tube witness needs d+2 <= q <= 2d");
  return tube_candidate(d, q, n);
}

namespace {

PartialColoring tube_pins(const MixingWitness& w, const Box& window) {
  PartialColoring pins(window, w.q);
  pins.set(w.u(), w.x(w.u()));
  for (const auto& s : w.tube(window.high()[0]))
    if (window.contains(s)) pins.set(s, w.x(s));
  return pins;
}

}  // namespace

ForcingResult verify_forcing(MixingWitness& w, Index radius) {
  if (radius < 2) throw std::domain_error("radius must be >= 2");
  Box window = Box::ball(radius, w.d);
  w.n = radius - 1;
  auto problem = region_problem(window.sites(), w.q, tube_pins(w, window));
  auto& dom = problem.domains;
  const auto& g = problem.sites.graph;

  std::deque<Vertex> queue;
  std::vector<char> queued(dom.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v)
    if (popcount(dom[v]) == 1) {
      queue.push_back(v);
      queued[v] = 1;
    }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (auto u : g.adjacent(v)) {
      if (!(dom[u] & dom[v])) continue;
      dom[u] &= ~dom[v];
      if (popcount(dom[u]) == 1 && !queued[u]) {
        queued[u] = 1;
        queue.push_back(u);
      }
    }
  }

  ForcingResult r;
  r.forced = true;
  for (Index m = -radius; m <= radius; ++m) {
    Coord s = Coord::unit(w.d, 0, m);
    ColorMask dm = dom[problem.sites.find(s)];
    const bool single = popcount(dm) == 1;
    r.axis.push_back(single ? std::countr_zero(dm) : -1);
    if (std::abs(m) <= radius - 1 && (!single || std::countr_zero(dm) != w.x(s))) {
      if (r.forced) r.first_unforced = s;
      r.forced = false;
    }
  }
  return r;
}

bool axis_forced_exhaustive(const MixingWitness& w, Index radius) {
  Box window = Box::ball(radius, w.d);
  auto problem = region_problem(window.sites(), w.q, tube_pins(w, window));
  if (!find_coloring(problem.sites.graph, problem.domains)) return false;
  for (Index m = -(radius - 1); m <= radius - 1; ++m) {
    Coord s = Coord::unit(w.d, 0, m);
    Vertex v = problem.sites.find(s);
    for (Color c = 0; c < w.q; ++c) {
      if (c == w.x(s)) continue;
      auto domains = problem.domains;
      domains[v] &= bit(c);
      if (find_coloring(problem.sites.graph, std::move(domains))) return false;
    }
  }
  return true;
}

SiViolation si_violation_witness(int d, int q, Index n) {
  if (q < 3 || q > d + 1) throw std::domain_error("the frozen witness needs 3 <= q <= d+1");
  if (n < 1) throw std::domain_error("need n >= 1");
  SiViolation r{frozen_rule(d, q), q, n};
  Box ball = Box::ball(n, d);
  Coord origin = Coord::zero(d);
  r.y_at_origin = static_cast<Color>((r.x(origin) + 1) % q);
  auto outer = paint_sites(r.x, external_boundary(ball), ball.grown(1), q);
  auto problem = region_problem(ball.sites(), q, outer);
  r.fillings = count_colorings(problem.sites.graph, problem.domains);
  if (r.fillings == 1) {
    auto z = find_coloring(problem.sites.graph, problem.domains);
    r.unique_filling_is_x = true;
    for (int v = 0; v < problem.sites.size(); ++v)
      if ((*z)[v] != r.x(problem.sites.sites[v])) r.unique_filling_is_x = false;
  }
  auto pinned = problem.domains;
  pinned[problem.sites.find(origin)] &= bit(r.y_at_origin);
  r.violated = !find_coloring(problem.sites.graph, std::move(pinned)).has_value();
  return r;
}

MoveSpec MoveSpec::parse(const std::string& text) {
  if (text == "pivot") return {MoveKind::pivot, 1};
  if (text == "kempe") return {MoveKind::kempe, 1};
  if (text.rfind("npivot:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(text.substr(7));
    } catch (const std::exception&) {
      n = 0;
    }
    if (n < 1) throw std::invalid_argument("npivot block size must be a positive integer");
    return {MoveKind::npivot, n};
  }
  throw std::invalid_argument("unknown move kind '" + text + "'");
}

std::string MoveSpec::str() const {
  switch (kind) {
    case MoveKind::pivot:
      return "pivot";
    case MoveKind::kempe:
      return "kempe";
    case MoveKind::npivot:
      return "npivot:" + std::to_string(block);
  }
  return "?";
}

namespace {

class StateSpace {
 public:
  StateSpace(const Box& box, const PartialColoring& boundary, int q, std::uint64_t cap)
      : box_(box), q_(q), problem_(region_problem(box.sites(), q, boundary)), boundary_(boundary) {
    bits_ = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(q - 1))));
    if (static_cast<std::size_t>(bits_) * box.volume() > 64)
      throw std::domain_error("box too large for packed 64-bit states");
    enumerate_colorings(problem_.sites.graph, problem_.domains, VarOrder::lexicographic,
                        [&](std::span<const Color> f) {
                          if (states_.size() >= cap) throw StateCapExceeded(cap);
                          states_.push_back(pack(f));
                          return true;
                        });
    // Lexicographic enumeration with the first site in the top bits keeps states sorted.
  }

  std::uint64_t pack(std::span<const Color> f) const {
    std::uint64_t s = 0;
    for (auto c : f) s = (s << bits_) | static_cast<std::uint64_t>(c);
    return s;
  }
  std::vector<Color> unpack(std::uint64_t s) const {
    std::vector<Color> f(box_.volume());
    for (std::size_t i = f.size(); i-- > 0;) {
      f[i] = static_cast<Color>(s & ((std::uint64_t{1} << bits_) - 1));
      s >>= bits_;
    }
    return f;
  }
  std::int64_t find(std::uint64_t s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || *it != s) return -1;
    return it - states_.begin();
  }

  const std::vector<std::uint64_t>& states() const { return states_; }
  const RegionProblem& problem() const { return problem_; }
  const PartialColoring& boundary() const { return boundary_; }
  const Box& box() const { return box_; }
  int q() const { return q_; }

 private:
  Box box_;
  int q_;
  int bits_ = 1;
  RegionProblem problem_;
  PartialColoring boundary_;
  std::vector<std::uint64_t> states_;
};

void pivot_moves(const StateSpace& sp, std::vector<Color>& f, std::vector<std::uint64_t>& out) {
  const auto& g = sp.problem().sites.graph;
  for (Vertex v = 0; v < g.size(); ++v) {
    ColorMask allowed = sp.problem().domains[v];
    for (auto u : g.adjacent(v)) allowed &= ~bit(f[u]);
    allowed &= ~bit(f[v]);
    Color keep = f[v];
    for (ColorMask m = allowed; m; m &= m - 1) {
      f[v] = std::countr_zero(m);
      out.push_back(sp.pack(f));
    }
    f[v] = keep;
  }
}

void block_moves(const StateSpace& sp, int block, std::vector<Color>& f, std::vector<std::uint64_t>& out) {
  const Box& box = sp.box();
  const int d = box.dim();
  // Anchors of block translates, clamped so each block stays inside the box.
  Coord lo = box.low(), hi = box.low();
  for (int k = 0; k < d; ++k) hi[k] = box.low()[k] + std::max<Index>(0, box.extent(k) - block);
  for (const auto& anchor : Box(lo, hi).sites()) {
    Coord top = anchor;
    for (int k = 0; k < d; ++k) top[k] = std::min(box.high()[k], anchor[k] + block - 1);
    Box sub(anchor, top);
    PartialColoring fixed = sp.boundary();
    for (std::size_t i = 0; i < f.size(); ++i) {
      Coord s = box.at(i);
      if (!sub.contains(s)) fixed.set(s, f[i]);
    }
    auto sites = sub.sites();
    auto local = region_problem(sites, sp.q(), fixed.with_window(box.grown(1)));
    enumerate_colorings(local.sites.graph, local.domains, VarOrder::lexicographic, [&](std::span<const Color> g) {
      auto h = f;
      for (std::size_t j = 0; j < sites.size(); ++j) h[box.index(sites[j])] = g[j];
      if (h != f) out.push_back(sp.pack(h));
      return true;
    });
  }
}

void kempe_moves(const StateSpace& sp, std::vector<Color>& f, std::vector<std::uint64_t>& out) {
  const auto& g = sp.problem().sites.graph;
  const auto& sites = sp.problem().sites.sites;
  for (Color a = 0; a < sp.q(); ++a) {
    for (Color b = a + 1; b < sp.q(); ++b) {
      std::vector<char> seen(f.size(), 0);
      for (Vertex start = 0; start < g.size(); ++start) {
        if (seen[start] || (f[start] != a && f[start] != b)) continue;
        std::vector<Vertex> comp{start}, stack{start};
        seen[start] = 1;
        bool pinned = false;
        while (!stack.empty()) {
          Vertex v = stack.back();
          stack.pop_back();
          for (const auto& w : lattice_neighbors(sites[v])) {
            if (sp.box().contains(w)) continue;
            auto c = sp.boundary().get(w);
            if (c && (*c == a || *c == b)) pinned = true;
          }
          for (auto u : g.adjacent(v))
            if (!seen[u] && (f[u] == a || f[u] == b)) {
              seen[u] = 1;
              comp.push_back(u);
              stack.push_back(u);
            }
        }
        if (pinned) continue;
        auto h = f;
        for (auto v : comp) h[v] = (f[v] == a) ? b : a;
        out.push_back(sp.pack(h));
      }
    }
  }
}

}  // namespace

MoveGraphReport move_graph(const Box& box, const PartialColoring& boundary, int q, MoveSpec move,
                           std::uint64_t state_cap) {
  for (const auto& [site, color] : boundary.assignment())
    if (box.contains(site)) throw std::domain_error("boundary sites must lie outside the box");
  if (!is_proper(boundary)) throw std::domain_error("boundary coloring is not proper");
  StateSpace sp(box, boundary.restricted(external_boundary(box)).with_window(box.grown(1)), q, state_cap);

  MoveGraphReport r;
  r.move = move;
  r.state_count = sp.states().size();
  std::vector<char> visited(sp.states().size(), 0);
  std::vector<std::uint64_t> next;
  for (std::size_t root = 0; root < sp.states().size(); ++root) {
    if (visited[root]) continue;
    std::uint64_t size = 0, depth = 0;
    std::vector<std::size_t> frontier{root};
    visited[root] = 1;
    while (!frontier.empty()) {
      size += frontier.size();
      std::vector<std::size_t> layer;
      for (auto s : frontier) {
        auto f = sp.unpack(sp.states()[s]);
        next.clear();
        switch (move.kind) {
          case MoveKind::pivot:
            pivot_moves(sp, f, next);
            break;
          case MoveKind::npivot:
            block_moves(sp, move.block, f, next);
            break;
          case MoveKind::kempe:
            kempe_moves(sp, f, next);
            break;
        }
        for (auto packed : next) {
          auto idx = sp.find(packed);
          if (idx < 0) throw std::logic_error("move left the state space");
          if (!visited[idx]) {
            visited[idx] = 1;
            layer.push_back(static_cast<std::size_t>(idx));
          }
        }
      }
      if (!layer.empty()) ++depth;
      frontier = std::move(layer);
    }
    ++r.component_count;
    r.component_sizes.push_back(size);
    r.largest_component = std::max(r.largest_component, size);
    r.diameter_bound = std::max(r.diameter_bound, 2 * depth);
  }
  return r;
}

}  // namespace zdcolor
