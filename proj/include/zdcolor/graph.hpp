#ifndef ZDCOLOR_GRAPH_HPP
#define ZDCOLOR_GRAPH_HPP

// Index-based undirected graphs and digraphs, plus the bridge from sets of
// lattice sites to them.

#include <map>
#include <utility>
#include <vector>

#include "zdcolor/lattice.hpp"

namespace zdcolor {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  int size() const { return static_cast<int>(adj_.size()); }
  void add_edge(Vertex u, Vertex v);
  const std::vector<Vertex>& adjacent(Vertex v) const { return adj_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  /// Number of edges with both endpoints in `members` (a 0/1 mask).
  std::size_t edges_within(const std::vector<char>& members) const;
  Graph induced(const std::vector<Vertex>& keep) const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
};

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : out_(n) {}

  int size() const { return static_cast<int>(out_.size()); }
  void add_arc(Vertex from, Vertex to) { out_[from].push_back(to); }
  const std::vector<Vertex>& out(Vertex v) const { return out_[v]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_[v].size()); }
  bool has_arc(Vertex from, Vertex to) const;

  Digraph induced(const std::vector<Vertex>& keep) const;
  /// Strongly connected components, listed sinks first (reverse topological order).
  std::vector<std::vector<Vertex>> strong_components() const;

 private:
  std::vector<std::vector<Vertex>> out_;
};

/// A lattice region viewed as an induced subgraph of Z^d.
struct SiteGraph {
  std::vector<Coord> sites;
  std::map<Coord, Vertex> index;
  Graph graph;

  static SiteGraph induced(const Box& box);
  static SiteGraph induced(const CoordSet& sites);
  static SiteGraph induced(const std::vector<Coord>& sites);

  int size() const { return static_cast<int>(sites.size()); }
  Vertex find(const Coord& c) const;  ///< -1 when absent
};

}  // namespace zdcolor

#endif  // ZDCOLOR_GRAPH_HPP
