#include "zdcolor/graph.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace zdcolor {

void Graph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("self loops are not allowed");
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  edges_.emplace_back(u, v);
}

std::size_t Graph::edges_within(const std::vector<char>& members) const {
  std::size_t n = 0;
  for (auto [u, v] : edges_)
    if (members[u] && members[v]) ++n;
  return n;
}

Graph Graph::induced(const std::vector<Vertex>& keep) const {
  std::vector<int> pos(size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  Graph g(static_cast<int>(keep.size()));
  for (auto [u, v] : edges_)
    if (pos[u] >= 0 && pos[v] >= 0) g.add_edge(pos[u], pos[v]);
  return g;
}

bool Digraph::has_arc(Vertex from, Vertex to) const {
  return std::find(out_[from].begin(), out_[from].end(), to) != out_[from].end();
}

Digraph Digraph::induced(const std::vector<Vertex>& keep) const {
  std::vector<int> pos(size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  Digraph g(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (auto w : out_[keep[i]])
      if (pos[w] >= 0) g.add_arc(static_cast<Vertex>(i), pos[w]);
  return g;
}

std::vector<std::vector<Vertex>> Digraph::strong_components() const {
  // Tarjan, iterative. Components are emitted in reverse topological order.
  const int n = size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> comps;
  int counter = 0;

  struct Frame {
    Vertex v;
    std::size_t next;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.next < out_[f.v].size()) {
        Vertex w = out_[f.v][f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

SiteGraph SiteGraph::induced(const std::vector<Coord>& sites) {
  SiteGraph sg;
  sg.sites = sites;
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (!sg.index.emplace(sites[i], static_cast<Vertex>(i)).second)
      throw std::invalid_argument("duplicate site " + sites[i].str());
  sg.graph = Graph(static_cast<int>(sites.size()));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (int k = 0; k < sites[i].dim(); ++k) {
      Coord w = sites[i];
      w[k] += 1;
      auto it = sg.index.find(w);
      if (it != sg.index.end()) sg.graph.add_edge(static_cast<Vertex>(i), it->second);
    }
  }
  return sg;
}

SiteGraph SiteGraph::induced(const Box& box) { return induced(box.sites()); }

SiteGraph SiteGraph::induced(const CoordSet& sites) {
  return induced(std::vector<Coord>(sites.begin(), sites.end()));
}

Vertex SiteGraph::find(const Coord& c) const {
  auto it = index.find(c);
  return it == index.end() ? -1 : it->second;
}

}  // namespace zdcolor
