// freegroup.hpp — spanning trees and chord alphabets, loop-to-word tracing,
// free reduction, and the homomorphisms between the free groups of graphs
// induced by graph maps.
#pragma once

#include <deque>

#include "graphends/truncation.hpp"

namespace graphends {

// Deterministic spanning tree of a connected multigraph: BFS from the
// basepoint, neighbors scanned in vertex-id order with parallel edges in
// edge-id order. The chords (non-tree edges) are the free generators of the
// fundamental group; each carries a canonical orientation from its smaller
// endpoint to its larger one (self-loops keep their stored orientation).
class SpanningTree {
 public:
  struct ParentLink {
    VertexId parent;
    EdgeId edge;
  };
  struct Chord {
    EdgeId edge;
    VertexId from;
    VertexId to;
  };

  SpanningTree(FiniteGraph graph, std::map<VertexId, ParentLink, IdLess> parent,
               std::vector<Chord> chords, std::vector<VertexId> bfs_order)
      : graph_(std::move(graph)),
        parent_(std::move(parent)),
        chords_(std::move(chords)),
        bfs_order_(std::move(bfs_order)) {
    for (std::size_t i = 0; i < chords_.size(); ++i) chord_index_[chords_[i].edge] = static_cast<int>(i);
    for (const auto& [v, link] : parent_) tree_edges_.insert(link.edge);
  }

  const FiniteGraph& graph() const { return graph_; }
  const VertexId& root() const { return graph_.basepoint(); }
  const std::vector<Chord>& chords() const { return chords_; }
  int rank() const { return static_cast<int>(chords_.size()); }
  const std::vector<VertexId>& bfs_order() const { return bfs_order_; }
  bool is_tree_edge(const EdgeId& id) const { return tree_edges_.count(id) > 0; }
  const std::map<VertexId, ParentLink, IdLess>& parent() const { return parent_; }

  std::optional<int> chord_index(const EdgeId& id) const {
    auto it = chord_index_.find(id);
    if (it == chord_index_.end()) return std::nullopt;
    return it->second;
  }

  // Unique reduced path u -> v through the tree.
  std::vector<OrientedEdge> tree_path(const VertexId& u, const VertexId& v) const {
    auto chain_to_root = [this](VertexId x) {
      std::vector<VertexId> chain{x};
      while (true) {
        auto it = parent_.find(chain.back());
        if (it == parent_.end()) break;
        chain.push_back(it->second.parent);
      }
      return chain;
    };
    std::vector<VertexId> cu = chain_to_root(u), cv = chain_to_root(v);
    // Strip the common tail above the meeting point.
    while (cu.size() > 1 && cv.size() > 1 && cu[cu.size() - 2] == cv[cv.size() - 2]) {
      cu.pop_back();
      cv.pop_back();
    }
    std::vector<OrientedEdge> path;
    for (std::size_t i = 0; i + 1 < cu.size(); ++i) {
      const Edge* e = graph_.find_edge(parent_.at(cu[i]).edge);
      path.push_back({e->id, e->a != cu[i]});  // child -> parent
    }
    for (std::size_t i = cv.size() - 1; i-- > 0;) {
      const Edge* e = graph_.find_edge(parent_.at(cv[i]).edge);
      path.push_back({e->id, e->b != cv[i]});  // parent -> child
    }
    return path;
  }

 private:
  FiniteGraph graph_;
  std::map<VertexId, ParentLink, IdLess> parent_;
  std::vector<Chord> chords_;
  std::vector<VertexId> bfs_order_;
  std::map<EdgeId, int, IdLess> chord_index_;
  std::set<EdgeId, IdLess> tree_edges_;
};

namespace detail {

inline SpanningTree::Chord make_chord(const Edge& e) {
  if (e.a == e.b || id_less(e.a, e.b)) return {e.id, e.a, e.b};
  return {e.id, e.b, e.a};
}

}  // namespace detail

inline SpanningTree spanning_tree(const FiniteGraph& g) {
  if (!is_connected(g)) throw GraphError("spanning_tree requires a connected graph");

  // Incident edges per vertex in (neighbor id, edge id) scan order.
  auto inc = g.incidence();
  for (auto& [v, idxs] : inc) {
    std::sort(idxs.begin(), idxs.end(), [&](std::size_t x, std::size_t y) {
      const Edge& ex = g.edges()[x];
      const Edge& ey = g.edges()[y];
      const VertexId& nx = ex.a == v ? ex.b : ex.a;
      const VertexId& ny = ey.a == v ? ey.b : ey.a;
      const int c = compare_ids(nx, ny);
      if (c != 0) return c < 0;
      return id_less(ex.id, ey.id);
    });
  }

  std::map<VertexId, SpanningTree::ParentLink, IdLess> parent;
  std::vector<SpanningTree::Chord> chords;
  std::set<EdgeId, IdLess> classified;
  std::set<VertexId, IdLess> discovered{g.basepoint()};
  std::vector<VertexId> order{g.basepoint()};
  std::deque<VertexId> queue{g.basepoint()};

  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (std::size_t i : inc.at(v)) {
      const Edge& e = g.edges()[i];
      if (!classified.insert(e.id).second) continue;
      const VertexId& w = e.a == v ? e.b : e.a;
      if (discovered.insert(w).second) {
        parent[w] = {v, e.id};
        order.push_back(w);
        queue.push_back(w);
      } else {
        chords.push_back(detail::make_chord(e));
      }
    }
  }
  return SpanningTree(g, std::move(parent), std::move(chords), std::move(order));
}

// Extends a spanning tree of a connected subgraph g1 to one of g2: every
// tree edge of `sub` stays a tree edge, so every chord of g1 stays a chord
// of g2. The chords of g1 come first in the extended chord list, in their
// original order, so the induced renaming of generators is the identity on
// the first rank(g1) indices.
inline SpanningTree extend_spanning_tree(const SpanningTree& sub, const FiniteGraph& g2) {
  const FiniteGraph& g1 = sub.graph();
  for (const VertexId& v : g1.vertices())
    if (!g2.has_vertex(v)) throw GraphError("subgraph vertex missing from supergraph: " + v);
  for (const Edge& e : g1.edges()) {
    const Edge* e2 = g2.find_edge(e.id);
    if (e2 == nullptr || !(*e2 == e))
      throw GraphError("subgraph edge missing from supergraph: " + e.id);
  }
  if (!is_connected(g2)) throw GraphError("extend_spanning_tree requires a connected supergraph");

  auto inc = g2.incidence();
  for (auto& [v, idxs] : inc) {
    std::sort(idxs.begin(), idxs.end(), [&](std::size_t x, std::size_t y) {
      const Edge& ex = g2.edges()[x];
      const Edge& ey = g2.edges()[y];
      const VertexId& nx = ex.a == v ? ex.b : ex.a;
      const VertexId& ny = ey.a == v ? ey.b : ey.a;
      const int c = compare_ids(nx, ny);
      if (c != 0) return c < 0;
      return id_less(ex.id, ey.id);
    });
  }

  std::map<VertexId, SpanningTree::ParentLink, IdLess> parent = sub.parent();
  std::vector<SpanningTree::Chord> chords = sub.chords();
  std::set<EdgeId, IdLess> classified;
  for (const Edge& e : g1.edges()) classified.insert(e.id);  // g1 edges keep their roles
  std::set<VertexId, IdLess> discovered(g1.vertices().begin(), g1.vertices().end());
  std::vector<VertexId> order = sub.bfs_order();
  std::deque<VertexId> queue(order.begin(), order.end());

  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (std::size_t i : inc.at(v)) {
      const Edge& e = g2.edges()[i];
      if (!classified.insert(e.id).second) continue;
      const VertexId& w = e.a == v ? e.b : e.a;
      if (discovered.insert(w).second) {
        parent[w] = {v, e.id};
        order.push_back(w);
        queue.push_back(w);
      } else {
        chords.push_back(detail::make_chord(e));
      }
    }
  }
  return SpanningTree(g2, std::move(parent), std::move(chords), std::move(order));
}

// ---------------------------------------------------------------------------
// Words over a chord alphabet.

struct Letter {
  int gen = 0;   // chord index, 0-based
  int sign = 1;  // +1 or -1

  bool operator==(const Letter& o) const { return gen == o.gen && sign == o.sign; }
};

inline Letter inverse(const Letter& l) { return {l.gen, -l.sign}; }

struct Word {
  int rank = 0;
  std::vector<Letter> letters;
};

// A freely reduced word: no adjacent inverse pair. Construct via reduce()
// or from_letters(), which validates.
class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(int rank) : rank_(rank) {}

  static ReducedWord from_letters(int rank, std::vector<Letter> letters) {
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (letters[i].gen < 0 || letters[i].gen >= rank)
        throw InvalidArgument("letter outside alphabet of rank " + std::to_string(rank));
      if (letters[i].sign != 1 && letters[i].sign != -1) throw InvalidArgument("letter sign must be +-1");
      if (i > 0 && letters[i].gen == letters[i - 1].gen && letters[i].sign == -letters[i - 1].sign)
        throw InvalidArgument("word is not reduced at position " + std::to_string(i));
    }
    ReducedWord w(rank);
    w.letters_ = std::move(letters);
    return w;
  }

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  Word as_word() const { return {rank_, letters_}; }

  bool operator==(const ReducedWord& o) const { return rank_ == o.rank_ && letters_ == o.letters_; }

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

// Free reduction by a single left-to-right stack pass; the reduced form is
// unique, so the strategy does not matter.
inline ReducedWord reduce(const Word& w) {
  std::vector<Letter> stack;
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || l.gen >= w.rank)
      throw InvalidArgument("letter outside alphabet of rank " + std::to_string(w.rank));
    if (l.sign != 1 && l.sign != -1) throw InvalidArgument("letter sign must be +-1");
    if (!stack.empty() && stack.back().gen == l.gen && stack.back().sign == -l.sign)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return ReducedWord::from_letters(w.rank, std::move(stack));
}

inline ReducedWord concat(const ReducedWord& u, const ReducedWord& v) {
  if (u.rank() != v.rank()) throw InvalidArgument("alphabet mismatch in concat");
  Word w{u.rank(), u.letters()};
  w.letters.insert(w.letters.end(), v.letters().begin(), v.letters().end());
  return reduce(w);
}

inline ReducedWord invert(const ReducedWord& w) {
  std::vector<Letter> letters(w.letters().rbegin(), w.letters().rend());
  for (Letter& l : letters) l.sign = -l.sign;
  return ReducedWord::from_letters(w.rank(), std::move(letters));
}

inline bool equal(const ReducedWord& u, const ReducedWord& v) {
  if (u.rank() != v.rank()) throw InvalidArgument("alphabet mismatch in equal");
  return u.letters() == v.letters();
}

// Word of a closed edge path: chord crossings in order, +1 along the
// canonical orientation. Tree edges contribute nothing.
inline Word trace_word(const EdgePath& path, const SpanningTree& tree) {
  if (!path.empty()) {
    const VertexId start = [&] {
      const Edge* e = tree.graph().find_edge(path.front().edge);
      if (e == nullptr) throw GraphError("path edge not in graph: " + path.front().edge);
      return path.front().reverse ? e->b : e->a;
    }();
    if (walk_path(tree.graph(), start, path) != start)
      throw GraphError("trace_word requires a closed edge path");
  }
  Word w{tree.rank(), {}};
  for (const OrientedEdge& s : path) {
    const auto idx = tree.chord_index(s.edge);
    if (!idx) {
      if (!tree.is_tree_edge(s.edge)) throw GraphError("path edge not in graph: " + s.edge);
      continue;
    }
    const SpanningTree::Chord& c = tree.chords()[static_cast<std::size_t>(*idx)];
    const Edge* e = tree.graph().find_edge(s.edge);
    const VertexId& from = s.reverse ? e->b : e->a;
    const VertexId& to = s.reverse ? e->a : e->b;
    int sign;
    if (c.from == c.to) {
      sign = s.reverse ? -1 : 1;  // self-loop: stored orientation is canonical
    } else {
      sign = (from == c.from && to == c.to) ? 1 : -1;
    }
    w.letters.push_back({*idx, sign});
  }
  return w;
}

// ---------------------------------------------------------------------------
// Induced homomorphisms.

struct GroupHom {
  int source_rank = 0;
  int target_rank = 0;
  std::vector<ReducedWord> images;  // one per source generator
};

inline GroupHom identity_hom(int rank) {
  GroupHom h{rank, rank, {}};
  for (int i = 0; i < rank; ++i) h.images.push_back(ReducedWord::from_letters(rank, {{i, 1}}));
  return h;
}

inline ReducedWord apply_hom(const GroupHom& h, const Word& w) {
  if (w.rank != h.source_rank) throw InvalidArgument("alphabet mismatch in apply_hom");
  std::vector<Letter> stack;
  auto push = [&stack](const Letter& l) {
    if (!stack.empty() && stack.back().gen == l.gen && stack.back().sign == -l.sign)
      stack.pop_back();
    else
      stack.push_back(l);
  };
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || l.gen >= h.source_rank)
      throw InvalidArgument("letter outside alphabet of rank " + std::to_string(h.source_rank));
    const ReducedWord& img = h.images[static_cast<std::size_t>(l.gen)];
    if (l.sign > 0)
      for (const Letter& m : img.letters()) push(m);
    else
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) push(inverse(*it));
  }
  return ReducedWord::from_letters(h.target_rank, std::move(stack));
}

inline ReducedWord apply_hom(const GroupHom& h, const ReducedWord& w) {
  return apply_hom(h, w.as_word());
}

// Homomorphism F(Gamma_m) -> F(Gamma_n) induced by a graph map: each chord e
// of tree_m becomes the loop (root -> start of e) . e . (end of e -> root),
// which is pushed through the map edgewise and traced over tree_n.
inline GroupHom induced_hom(const GraphMap& map, const SpanningTree& tree_m,
                            const SpanningTree& tree_n) {
  for (const Edge& e : tree_m.graph().edges())
    if (!map.edge_map.count(e.id))
      throw InvalidArgument("graph map does not cover edge " + e.id);

  GroupHom h{tree_m.rank(), tree_n.rank(), {}};
  for (const SpanningTree::Chord& c : tree_m.chords()) {
    const Edge* e = tree_m.graph().find_edge(c.edge);
    EdgePath loop = tree_m.tree_path(tree_m.root(), c.from);
    loop.push_back({c.edge, e->a != c.from});
    const auto back = tree_m.tree_path(c.to, tree_m.root());
    loop.insert(loop.end(), back.begin(), back.end());

    EdgePath mapped;
    for (const OrientedEdge& s : loop)
      if (const auto& img = map.edge_map.at(s.edge)) mapped.push_back({*img, s.reverse});
    h.images.push_back(reduce(trace_word(mapped, tree_n)));
  }
  return h;
}

}  // namespace graphends
