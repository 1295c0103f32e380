// truncation.hpp — the finite quotient graphs obtained by collapsing each
// component of a ball complement to a point, loop descriptions that may run
// through the ends, their traces in the quotients, and the projection maps
// between levels.
#pragma once

#include <optional>
#include <variant>

#include "graphends/family.hpp"

namespace graphends {

// Level-n quotient. Vertices are the ball interior (distance <= n-1) plus
// one collapsed vertex "C:n:i" per complement component; edges keep their
// original ids and slot order, with collapsed endpoints substituted in
// place. Edges interior to a component are gone, which is exactly what
// makes the fundamental group free of finite rank.
struct QuotientGraph {
  FiniteGraph graph;
  int level = 0;
  // Every vertex generated within the construction horizon -> its quotient
  // vertex (interior vertices map to themselves).
  std::map<VertexId, VertexId, IdLess> vertex_image;
  std::vector<std::string> collapsed;  // "C:n:i" in component order
  std::map<std::string, std::vector<VertexId>, IdLess> collapsed_frontier;
};

namespace detail {

inline int truncation_horizon(const GraphFamily& family, int n, int override_horizon = -1) {
  long long h = override_horizon >= 0 ? override_horizon
                                      : static_cast<long long>(n) + 2LL * family.ray_band() + 2;
  if (family.max_radius() < h) h = family.max_radius();
  if (h < n + 1)
    throw InvalidArgument("family '" + family.name() + "' is not described beyond radius " +
                          std::to_string(family.max_radius()) +
                          "; cannot truncate at level " + std::to_string(n));
  return static_cast<int>(h);
}

struct TruncationContext {
  int level = 0;
  int horizon = 0;
  std::map<VertexId, int, IdLess> dist;
  std::map<EdgeId, Edge, IdLess> original_edges;
  ComplementPartition partition;
  QuotientGraph quotient;
};

inline TruncationContext make_truncation_context(const GraphFamily& family, int n,
                                                 int override_horizon = -1) {
  if (n < 1) throw InvalidArgument("truncation level must be >= 1");
  TruncationContext ctx;
  ctx.level = n;
  ctx.horizon = truncation_horizon(family, n, override_horizon);

  std::vector<Edge> edges;
  family.generate(ctx.horizon, ctx.dist, edges);
  for (const Edge& e : edges) ctx.original_edges.emplace(e.id, e);
  ctx.partition = complement_partition(ctx.dist, edges, n);

  QuotientGraph& q = ctx.quotient;
  q.level = n;
  std::vector<VertexId> vertices;
  for (const auto& [v, d] : ctx.dist) {
    if (d <= n - 1) {
      vertices.push_back(v);
      q.vertex_image[v] = v;
    }
  }
  for (std::size_t c = 0; c < ctx.partition.members.size(); ++c) {
    const std::string cid = "C:" + std::to_string(n) + ":" + std::to_string(c);
    q.collapsed.push_back(cid);
    q.collapsed_frontier[cid] = ctx.partition.frontiers[c];
    vertices.push_back(cid);
    for (const VertexId& v : ctx.partition.members[c]) q.vertex_image[v] = cid;
  }

  std::vector<Edge> qedges;
  for (const auto& [id, e] : ctx.original_edges) {
    const int da = ctx.dist.at(e.a), db = ctx.dist.at(e.b);
    if (da <= n - 1 && db <= n - 1) {
      qedges.push_back(e);
    } else if (da <= n - 1 || db <= n - 1) {
      qedges.push_back({id, q.vertex_image.at(e.a), q.vertex_image.at(e.b)});
    } else {
      if (q.vertex_image.at(e.a) != q.vertex_image.at(e.b))
        throw GraphError("edge joins two distinct collapsed components: " + id);
      // interior to one component: collapses away
    }
  }
  q.graph = FiniteGraph(std::move(vertices), std::move(qedges), family.basepoint());
  return ctx;
}

}  // namespace detail

inline QuotientGraph truncate(const GraphFamily& family, int n) {
  return detail::make_truncation_context(family, n).quotient;
}

// Graph map Gamma_m -> Gamma_n for m >= n: interior vertices either stay put
// or fall into a level-n component; collapsed vertices map to the collapsed
// vertex of the component containing them; edges map to the same-id edge
// when it survives at level n and to a vertex (nullopt) otherwise.
struct GraphMap {
  int from_level = 0;
  int to_level = 0;
  std::map<VertexId, VertexId, IdLess> vertex_map;
  std::map<EdgeId, std::optional<EdgeId>, IdLess> edge_map;
};

inline GraphMap rho_map(const GraphFamily& family, int m, int n) {
  if (n < 1 || m < n) throw InvalidArgument("rho_map requires m >= n >= 1");
  const auto cm = detail::make_truncation_context(family, m);
  const auto cn = detail::make_truncation_context(family, n, cm.horizon);

  GraphMap rho;
  rho.from_level = m;
  rho.to_level = n;
  for (const VertexId& v : cm.quotient.graph.vertices()) {
    auto fr = cm.quotient.collapsed_frontier.find(v);
    if (fr == cm.quotient.collapsed_frontier.end()) {
      rho.vertex_map[v] = cn.quotient.vertex_image.at(v);
    } else {
      const VertexId image = cn.quotient.vertex_image.at(fr->second.front());
      for (const VertexId& u : fr->second)
        if (cn.quotient.vertex_image.at(u) != image)
          throw GraphError("level-" + std::to_string(m) + " component splits at level " +
                           std::to_string(n) + ": " + v);
      rho.vertex_map[v] = image;
    }
  }
  for (const Edge& e : cm.quotient.graph.edges()) {
    if (cn.quotient.graph.has_edge(e.id)) {
      rho.edge_map[e.id] = e.id;
    } else {
      if (rho.vertex_map.at(e.a) != rho.vertex_map.at(e.b))
        throw GraphError("collapsed edge with split endpoints: " + e.id);
      rho.edge_map[e.id] = std::nullopt;
    }
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Loop descriptions.
//
// A loop is a finite list of segments based at the basepoint. ExplicitPath
// crosses finitely many named edges; RayOut follows a parametric edge family
// outward toward an end from a start index; RayBack follows the same family
// inward from the end. Two ray segments meeting at infinity must lie in the
// same complement component at every traced level.

struct ExplicitPath {
  std::vector<OrientedEdge> steps;
};

struct RayOut {
  std::string ray;
  int start = 0;
};

struct RayBack {
  std::string ray;
  int start = 0;
};

using LoopSegment = std::variant<ExplicitPath, RayOut, RayBack>;

struct LoopSpec {
  std::string name;
  std::vector<LoopSegment> segments;
};

// An edge path in a quotient graph (or in any FiniteGraph).
using EdgePath = std::vector<OrientedEdge>;

namespace detail {

struct OriginalWalker {
  const TruncationContext& ctx;
  VertexId at;

  void step(const OrientedEdge& s, const std::string& what) {
    auto it = ctx.original_edges.find(s.edge);
    if (it == ctx.original_edges.end())
      throw LoopError(what + " leaves the generated region: edge " + s.edge +
                      " not found within radius " + std::to_string(ctx.horizon));
    const Edge& e = it->second;
    const VertexId& from = s.reverse ? e.b : e.a;
    const VertexId& to = s.reverse ? e.a : e.b;
    if (from != at)
      throw LoopError("loop segments do not concatenate: at " + at + ", edge " + s.edge +
                      " starts at " + from);
    at = to;
  }
};

inline void check_ray_band(const TruncationContext& ctx, const std::string& ray, int index,
                           const Edge& e, int band) {
  const int da = ctx.dist.at(e.a), db = ctx.dist.at(e.b);
  const int lo = index - band, hi = index + band + 1;
  if (da < lo || da > hi || db < lo || db > hi)
    throw LoopError("ray '" + ray + "' violates its escape band at index " + std::to_string(index) +
                    " (edge " + e.id + ")");
}

// The collapsed vertex this ray's tail lies in at the context's level.
inline VertexId ray_tail_component(const TruncationContext& ctx, const GraphFamily& family,
                                   const std::string& ray) {
  const int probe_index = ctx.level + family.ray_band() + 1;
  const RayMotif motif = family.ray_motif(ray, probe_index);
  if (motif.steps.empty()) throw LoopError("ray '" + ray + "' has an empty motif");
  auto it = ctx.original_edges.find(motif.steps.front().edge);
  if (it == ctx.original_edges.end())
    throw LoopError("ray '" + ray + "' leaves the generated region near index " +
                    std::to_string(probe_index));
  const Edge& e = it->second;
  const VertexId& probe = motif.steps.front().reverse ? e.b : e.a;
  const VertexId image = ctx.quotient.vertex_image.at(probe);
  if (ctx.dist.at(probe) < ctx.level)
    throw LoopError("ray '" + ray + "' does not escape: probe vertex " + probe +
                    " is inside the ball");
  return image;
}

}  // namespace detail

// Image of the loop under the collapse map at level n: every crossed edge
// maps to its quotient edge when it survives and vanishes otherwise. Ray
// segments are consumed lazily; only indices whose edges survive at level n
// contribute, so the result is a finite closed edge path based at p.
inline EdgePath theta_trace(const LoopSpec& loop, const GraphFamily& family, int n) {
  const auto ctx = detail::make_truncation_context(family, n);
  const int band = family.ray_band();
  const QuotientGraph& q = ctx.quotient;

  EdgePath out;
  auto emit = [&](const OrientedEdge& s) {
    if (q.graph.has_edge(s.edge)) out.push_back(s);
  };

  // Position is either a finite original vertex or "at an end", recorded as
  // the collapsed vertex of the component the previous ray escaped through.
  std::optional<VertexId> at_end;
  detail::OriginalWalker walker{ctx, family.basepoint()};

  for (const LoopSegment& seg : loop.segments) {
    if (const auto* path = std::get_if<ExplicitPath>(&seg)) {
      if (at_end) throw LoopError("explicit path cannot start at an end");
      for (const OrientedEdge& s : path->steps) {
        walker.step(s, "explicit path");
        emit(s);
      }
    } else if (const auto* ray = std::get_if<RayOut>(&seg)) {
      if (at_end) throw LoopError("outward ray cannot start at an end");
      for (int i = ray->start; i <= n + band; ++i) {
        for (const OrientedEdge& s : family.ray_motif(ray->ray, i).steps) {
          walker.step(s, "ray '" + ray->ray + "'");
          detail::check_ray_band(ctx, ray->ray, i, ctx.original_edges.at(s.edge), band);
          emit(s);
        }
      }
      at_end = detail::ray_tail_component(ctx, family, ray->ray);
    } else {
      const RayBack& back = std::get<RayBack>(seg);
      if (!at_end) throw LoopError("inward ray must start at an end");
      const VertexId tail = detail::ray_tail_component(ctx, family, back.ray);
      if (tail != *at_end)
        throw LoopError("consecutive ray segments lie in different complement components at level " +
                        std::to_string(n) + ": " + *at_end + " vs " + tail);
      // Where the inward walk lands: the start vertex of the start-index motif.
      const RayMotif first = family.ray_motif(back.ray, back.start);
      if (first.steps.empty()) throw LoopError("ray '" + back.ray + "' has an empty motif");
      auto fit = ctx.original_edges.find(first.steps.front().edge);
      if (fit == ctx.original_edges.end())
        throw LoopError("ray '" + back.ray + "' leaves the generated region at index " +
                        std::to_string(back.start));
      const VertexId landing = first.steps.front().reverse ? fit->second.b : fit->second.a;

      // Walk the tail inward: highest index first, each motif reversed.
      bool positioned = false;
      for (int i = n + band; i >= back.start; --i) {
        const RayMotif motif = family.ray_motif(back.ray, i);
        if (!positioned && !motif.steps.empty()) {
          // Seed the walker at the far endpoint of this motif.
          auto it = ctx.original_edges.find(motif.steps.back().edge);
          if (it == ctx.original_edges.end())
            throw LoopError("ray '" + back.ray + "' leaves the generated region");
          walker.at = motif.steps.back().reverse ? it->second.a : it->second.b;
          positioned = true;
        }
        for (auto rit = motif.steps.rbegin(); rit != motif.steps.rend(); ++rit) {
          const OrientedEdge s{rit->edge, !rit->reverse};
          walker.step(s, "ray '" + back.ray + "'");
          detail::check_ray_band(ctx, back.ray, i, ctx.original_edges.at(s.edge), band);
          emit(s);
        }
      }
      if (positioned && walker.at != landing)
        throw LoopError("ray '" + back.ray + "' does not land at its start vertex");
      walker.at = landing;
      at_end.reset();
    }
  }

  if (at_end) throw LoopError("loop ends at an end, not at the basepoint");
  if (walker.at != family.basepoint())
    throw LoopError("loop does not close at the basepoint (ends at " + walker.at + ")");

  // The quotient image of a closed loop must itself be a closed path at p.
  if (walk_path(q.graph, q.graph.basepoint(), out) != q.graph.basepoint())
    throw GraphError("traced path is not closed at the basepoint");
  return out;
}

// Built-in loops on the ladder family.
//
//   trivial    constant loop at the basepoint
//   square     around the first square of the ladder
//   roundtrip  out along the bottom to the end, back along the top
//   figure4    out along the bottom, back along the top, then clockwise
//              around every square moving outward, and back along the top
inline std::vector<std::string> builtin_loop_names() {
  return {"trivial", "square", "roundtrip", "figure4"};
}

inline LoopSpec builtin_loop(const std::string& name) {
  if (name == "trivial") return {"trivial", {}};
  if (name == "square")
    return {"square",
            {ExplicitPath{{{"B:0", false}, {"R:1", false}, {"T:0", true}, {"R:0", true}}}}};
  if (name == "roundtrip")
    return {"roundtrip",
            {RayOut{"bottom", 0}, RayBack{"top", 0}, ExplicitPath{{{"R:0", true}}}}};
  if (name == "figure4")
    return {"figure4",
            {RayOut{"bottom", 0}, RayBack{"top", 0}, RayOut{"squares", 0}, RayBack{"top", 0},
             ExplicitPath{{{"R:0", true}}}}};
  throw UnknownName("unknown loop: " + name);
}

}  // namespace graphends
