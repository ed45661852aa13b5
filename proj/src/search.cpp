#include "zdcolor/search.hpp"

#include <cmath>
#include <stdexcept>

namespace zdcolor {
namespace {

class Backtracker {
 public:
  Backtracker(const Graph& graph, std::vector<ColorMask> domains, VarOrder order)
      : graph_(graph), domains_(std::move(domains)), order_(order), color_(graph.size(), -1) {
    unassigned_ = graph.size();
    if (static_cast<int>(domains_.size()) != graph.size())
      throw std::invalid_argument("one domain per vertex is required");
  }

  // Returns false when the visitor asked to stop.
  bool enumerate(const std::function<bool(std::span<const Color>)>& visit, std::uint64_t& found) {
    if (!consistent_start()) return true;
    return enumerate_rec(visit, found);
  }

  void count(BigInt& total) {
    if (!consistent_start()) return;
    for (Vertex v = 0; v < graph_.size(); ++v)
      for (auto w : graph_.adjacent(v))
        if (v < w) ++free_edges_;
    double bits = 0;
    for (auto m : domains_) bits += std::log2(static_cast<double>(popcount(m)));
    if (bits >= 126) {
      count_rec(total);
      return;
    }
    unsigned __int128 acc = 0;
    count_rec(acc);
    // Split the 128-bit total into two 64-bit halves for the conversion.
    total = BigInt(static_cast<std::uint64_t>(acc >> 64));
    total <<= 64;
    total += static_cast<std::uint64_t>(acc);
  }

 private:
  bool consistent_start() const {
    for (auto m : domains_)
      if (m == 0) return false;
    return true;
  }

  Vertex pick() const {
    Vertex best = -1;
    int best_size = kMaxColors + 1;
    for (Vertex v = 0; v < graph_.size(); ++v) {
      if (color_[v] >= 0) continue;
      if (order_ == VarOrder::lexicographic) return v;
      int s = popcount(domains_[v]);
      if (s < best_size) {
        best = v;
        best_size = s;
        if (s <= 1) break;
      }
    }
    return best;
  }

  // Counting branches on the vertex touching most unassigned edges, so the
  // rest turns independent early.
  Vertex pick_cover() const {
    Vertex best = -1;
    int best_degree = 0, best_size = kMaxColors + 1;
    for (Vertex v = 0; v < graph_.size(); ++v) {
      if (color_[v] >= 0) continue;
      int degree = 0;
      for (auto w : graph_.adjacent(v)) degree += color_[w] < 0;
      int s = popcount(domains_[v]);
      if (s <= 1) return v;  // forced: propagate first
      if (degree > best_degree || (degree == best_degree && s < best_size)) {
        best = v;
        best_degree = degree;
        best_size = s;
      }
    }
    return best;
  }

  // Assigns v=c and prunes neighbors; returns false on a wipe-out. The trail
  // records every touched domain so undo() restores it.
  bool assign(Vertex v, Color c) {
    color_[v] = c;
    --unassigned_;
    bool ok = true;
    for (auto w : graph_.adjacent(v)) {
      if (color_[w] >= 0) continue;
      --free_edges_;
      if (!(domains_[w] & bit(c))) continue;
      trail_.emplace_back(w, domains_[w]);
      domains_[w] &= ~bit(c);
      if (domains_[w] == 0) ok = false;
    }
    return ok;
  }

  void undo(Vertex v, std::size_t mark) {
    while (trail_.size() > mark) {
      auto [w, m] = trail_.back();
      trail_.pop_back();
      domains_[w] = m;
    }
    color_[v] = -1;
    ++unassigned_;
    for (auto w : graph_.adjacent(v))
      if (color_[w] < 0) ++free_edges_;
  }

  bool enumerate_rec(const std::function<bool(std::span<const Color>)>& visit, std::uint64_t& found) {
    Vertex v = pick();
    if (v < 0) {
      ++found;
      return visit(color_);
    }
    for (ColorMask m = domains_[v]; m; m &= m - 1) {
      Color c = std::countr_zero(m);
      auto mark = trail_.size();
      bool keep_going = true;
      if (assign(v, c)) keep_going = enumerate_rec(visit, found);
      undo(v, mark);
      if (!keep_going) return false;
    }
    return true;
  }

  template <class Acc>
  void count_rec(Acc& total) {
    // the unassigned vertices are independent: choices multiply
    if (free_edges_ == 0) {
      Acc product = 1;
      for (Vertex w = 0; w < graph_.size(); ++w)
        if (color_[w] < 0) product *= static_cast<unsigned>(popcount(domains_[w]));
      total += product;
      return;
    }
    Vertex v = pick_cover();
    for (ColorMask m = domains_[v]; m; m &= m - 1) {
      Color c = std::countr_zero(m);
      auto mark = trail_.size();
      if (assign(v, c)) count_rec(total);
      undo(v, mark);
    }
  }

  const Graph& graph_;
  std::vector<ColorMask> domains_;
  VarOrder order_;
  std::vector<Color> color_;
  std::vector<std::pair<Vertex, ColorMask>> trail_;
  int unassigned_ = 0;
  int free_edges_ = 0;  // edges with both ends unassigned, maintained while counting
};

}  // namespace

std::uint64_t enumerate_colorings(const Graph& graph, std::vector<ColorMask> domains, VarOrder order,
                                  const std::function<bool(std::span<const Color>)>& visit) {
  Backtracker bt(graph, std::move(domains), order);
  std::uint64_t found = 0;
  bt.enumerate(visit, found);
  return found;
}

std::optional<std::vector<Color>> find_coloring(const Graph& graph, std::vector<ColorMask> domains, VarOrder order) {
  std::optional<std::vector<Color>> out;
  enumerate_colorings(graph, std::move(domains), order, [&](std::span<const Color> f) {
    out.emplace(f.begin(), f.end());
    return false;
  });
  return out;
}

BigInt count_colorings(const Graph& graph, std::vector<ColorMask> domains) {
  Backtracker bt(graph, std::move(domains), VarOrder::fewest_options);
  BigInt total = 0;
  bt.count(total);
  return total;
}

RegionProblem region_problem(const std::vector<Coord>& region, int q, const PartialColoring& constraints) {
  if (q > kMaxColors) throw std::domain_error("at most 64 colors are supported");
  RegionProblem p{SiteGraph::induced(region), std::vector<ColorMask>(region.size(), full_mask(q))};
  for (const auto& [site, color] : constraints.assignment()) {
    Vertex v = p.sites.find(site);
    if (v >= 0) {
      p.domains[v] &= bit(color);
      continue;
    }
    for (const auto& w : lattice_neighbors(site)) {
      Vertex u = p.sites.find(w);
      if (u >= 0) p.domains[u] &= ~bit(color);
    }
  }
  return p;
}

}  // namespace zdcolor
