// graph.hpp — finite multigraphs with stable identifiers and a basepoint.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "graphends/ids.hpp"

namespace graphends {

// Undirected multigraph edge. The (a, b) slot order is preserved from the
// generator that produced the edge, so an edge id keeps a stable notion of
// "forward" traversal across balls and quotients at different levels.
struct Edge {
  EdgeId id;
  VertexId a;
  VertexId b;

  bool operator==(const Edge& o) const { return id == o.id && a == o.a && b == o.b; }
};

// A traversal of one edge; reverse means from b to a.
struct OrientedEdge {
  EdgeId edge;
  bool reverse = false;

  bool operator==(const OrientedEdge& o) const { return edge == o.edge && reverse == o.reverse; }
};

// Parallel edges and self-loops are permitted. Vertices are kept sorted by
// id, edges sorted by edge id; both orders are part of the value.
class FiniteGraph {
 public:
  FiniteGraph() = default;

  FiniteGraph(std::vector<VertexId> vertices, std::vector<Edge> edges, VertexId basepoint)
      : vertices_(std::move(vertices)), edges_(std::move(edges)), basepoint_(std::move(basepoint)) {
    std::sort(vertices_.begin(), vertices_.end(), id_less);
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw GraphError("duplicate vertex id");
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return id_less(x.id, y.id); });
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
      if (edges_[i].id == edges_[i + 1].id) throw GraphError("duplicate edge id: " + edges_[i].id);
    for (const Edge& e : edges_) {
      if (!has_vertex(e.a) || !has_vertex(e.b))
        throw GraphError("edge " + e.id + " has an endpoint that is not a listed vertex");
    }
    if (vertices_.empty()) throw GraphError("graph needs at least one vertex");
    if (!has_vertex(basepoint_)) throw GraphError("basepoint is not a vertex: " + basepoint_);
  }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const VertexId& basepoint() const { return basepoint_; }

  bool has_vertex(const VertexId& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v, IdLess{});
  }

  const Edge* find_edge(const EdgeId& id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, const EdgeId& k) { return id_less(e.id, k); });
    if (it == edges_.end() || it->id != id) return nullptr;
    return &*it;
  }

  bool has_edge(const EdgeId& id) const { return find_edge(id) != nullptr; }

  // Self-loops contribute 2 as usual for multigraph degree.
  std::size_t degree(const VertexId& v) const {
    std::size_t d = 0;
    for (const Edge& e : edges_) {
      if (e.a == v) ++d;
      if (e.b == v) ++d;
    }
    return d;
  }

  // Incident edge indices per vertex (self-loops listed once).
  std::map<VertexId, std::vector<std::size_t>, IdLess> incidence() const {
    std::map<VertexId, std::vector<std::size_t>, IdLess> inc;
    for (const VertexId& v : vertices_) inc[v];
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      inc[edges_[i].a].push_back(i);
      if (edges_[i].b != edges_[i].a) inc[edges_[i].b].push_back(i);
    }
    return inc;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  VertexId basepoint_;
};

inline bool is_connected(const FiniteGraph& g) {
  if (g.vertices().empty()) return true;
  const auto inc = g.incidence();
  std::set<VertexId, IdLess> seen;
  std::queue<VertexId> q;
  seen.insert(g.vertices().front());
  q.push(g.vertices().front());
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    for (std::size_t i : inc.at(v)) {
      const Edge& e = g.edges()[i];
      const VertexId& w = (e.a == v) ? e.b : e.a;
      if (seen.insert(w).second) q.push(w);
    }
  }
  return seen.size() == g.vertices().size();
}

// Walks the step sequence from `start`, checking each edge exists and
// consecutive steps share endpoints. Returns the final vertex.
inline VertexId walk_path(const FiniteGraph& g, const VertexId& start,
                          const std::vector<OrientedEdge>& steps) {
  if (!g.has_vertex(start)) throw GraphError("path start is not a vertex: " + start);
  VertexId at = start;
  for (const OrientedEdge& s : steps) {
    const Edge* e = g.find_edge(s.edge);
    if (e == nullptr) throw GraphError("path edge not in graph: " + s.edge);
    const VertexId& from = s.reverse ? e->b : e->a;
    const VertexId& to = s.reverse ? e->a : e->b;
    if (from != at)
      throw GraphError("path is not connected at edge " + s.edge + " (at " + at + ", edge starts at " +
                       from + ")");
    at = to;
  }
  return at;
}

}  // namespace graphends
