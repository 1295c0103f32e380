// family.hpp — generative descriptions of infinite locally finite graphs and
// the per-level queries on them: balls around the basepoint and the connected
// components of ball complements (the level-n approximation to the ends).
#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <variant>
#include <vector>

#include "graphends/graph.hpp"

namespace graphends {

using ParamValue = std::variant<long long, std::string>;
using Params = std::map<std::string, ParamValue>;

// One index of a parametric edge family: the finite edge sequence a ray
// crosses at that index. Rays escape outward, so every endpoint touched at
// index i must lie at distance within [i - band, i + band + 1] of the
// basepoint; the band makes trace truncation exact.
struct RayMotif {
  std::vector<OrientedEdge> steps;
};

namespace detail {

// Generator interface. generate() must produce every vertex at distance
// <= radius together with its exact distance, and every edge joining two
// produced vertices. Distances are verified against BFS for user families.
class FamilyImpl {
 public:
  virtual ~FamilyImpl() = default;
  virtual const std::string& name() const = 0;
  virtual const VertexId& basepoint() const = 0;
  virtual void generate(int radius, std::map<VertexId, int, IdLess>& dist,
                        std::vector<Edge>& edges) const = 0;
  // Table-driven families only describe finitely many levels.
  virtual int max_radius() const { return std::numeric_limits<int>::max(); }
  virtual std::vector<std::string> ray_names() const { return {}; }
  virtual RayMotif ray_motif(const std::string& ray, int index) const {
    (void)index;
    throw UnknownName("family '" + name() + "' has no ray '" + ray + "'");
  }
  virtual int ray_band() const { return 2; }
};

}  // namespace detail

// Immutable handle on a family; cheap to copy, safe to share across threads.
class GraphFamily {
 public:
  explicit GraphFamily(std::shared_ptr<const detail::FamilyImpl> impl) : impl_(std::move(impl)) {}

  const std::string& name() const { return impl_->name(); }
  const VertexId& basepoint() const { return impl_->basepoint(); }
  int max_radius() const { return impl_->max_radius(); }
  std::vector<std::string> ray_names() const { return impl_->ray_names(); }
  RayMotif ray_motif(const std::string& ray, int index) const { return impl_->ray_motif(ray, index); }
  int ray_band() const { return impl_->ray_band(); }

  void generate(int radius, std::map<VertexId, int, IdLess>& dist, std::vector<Edge>& edges) const {
    if (radius < 0) throw InvalidArgument("radius must be >= 0");
    if (radius > impl_->max_radius())
      throw InvalidArgument("family '" + name() + "' is only described up to radius " +
                            std::to_string(impl_->max_radius()));
    impl_->generate(radius, dist, edges);
  }

 private:
  std::shared_ptr<const detail::FamilyImpl> impl_;
};

namespace detail {

class LadderFamily final : public FamilyImpl {
 public:
  const std::string& name() const override {
    static const std::string n = "ladder";
    return n;
  }
  const VertexId& basepoint() const override {
    static const VertexId p = "b:0";
    return p;
  }
  // One-way infinite ladder: bottom vertices b:i, top vertices t:i, edges
  // B:i = b:i--b:i+1, T:i = t:i--t:i+1, rungs R:i = b:i--t:i. With basepoint
  // b:0 the graph distances are d(b:i) = i and d(t:i) = i + 1.
  void generate(int radius, std::map<VertexId, int, IdLess>& dist,
                std::vector<Edge>& edges) const override {
    dist.clear();
    edges.clear();
    for (int i = 0; i <= radius; ++i) dist["b:" + std::to_string(i)] = i;
    for (int i = 0; i + 1 <= radius; ++i) dist["t:" + std::to_string(i)] = i + 1;
    for (int i = 0; i + 1 <= radius; ++i)
      edges.push_back({"B:" + std::to_string(i), "b:" + std::to_string(i), "b:" + std::to_string(i + 1)});
    for (int i = 0; i + 2 <= radius; ++i)
      edges.push_back({"T:" + std::to_string(i), "t:" + std::to_string(i), "t:" + std::to_string(i + 1)});
    for (int i = 0; i + 1 <= radius; ++i)
      edges.push_back({"R:" + std::to_string(i), "b:" + std::to_string(i), "t:" + std::to_string(i)});
  }
  std::vector<std::string> ray_names() const override { return {"bottom", "top", "squares"}; }
  // bottom: B:i outward.  top: T:i outward.  squares: the clockwise square at
  // index i followed by the advance along the top, starting and ending on the
  // top row (t:i -> t:i+1).
  RayMotif ray_motif(const std::string& ray, int index) const override {
    const std::string i = std::to_string(index);
    const std::string i1 = std::to_string(index + 1);
    if (ray == "bottom") return {{{"B:" + i, false}}};
    if (ray == "top") return {{{"T:" + i, false}}};
    if (ray == "squares")
      return {{{"T:" + i, false},
               {"R:" + i1, true},
               {"B:" + i, true},
               {"R:" + i, false},
               {"T:" + i, false}}};
    throw UnknownName("ladder has no ray '" + ray + "'");
  }
};

class LineFamily final : public FamilyImpl {
 public:
  const std::string& name() const override {
    static const std::string n = "line";
    return n;
  }
  const VertexId& basepoint() const override {
    static const VertexId p = "z:0";
    return p;
  }
  // Cayley graph of Z: vertices z:i, edges Z:i = z:i--z:i+1 for i in Z.
  void generate(int radius, std::map<VertexId, int, IdLess>& dist,
                std::vector<Edge>& edges) const override {
    dist.clear();
    edges.clear();
    for (int i = -radius; i <= radius; ++i) dist["z:" + std::to_string(i)] = i < 0 ? -i : i;
    for (int i = -radius; i + 1 <= radius; ++i)
      edges.push_back({"Z:" + std::to_string(i), "z:" + std::to_string(i), "z:" + std::to_string(i + 1)});
  }
  std::vector<std::string> ray_names() const override { return {"pos", "neg"}; }
  RayMotif ray_motif(const std::string& ray, int index) const override {
    if (ray == "pos") return {{{"Z:" + std::to_string(index), false}}};
    if (ray == "neg") return {{{"Z:" + std::to_string(-index - 1), true}}};
    throw UnknownName("line has no ray '" + ray + "'");
  }
};

class TreeFamily final : public FamilyImpl {
 public:
  explicit TreeFamily(long long degree) : degree_(static_cast<int>(degree)) {
    if (degree < 3) throw InvalidArgument("tree degree must be >= 3");
    if (degree > 16) throw InvalidArgument("tree degree must be <= 16");
  }
  const std::string& name() const override {
    static const std::string n = "tree";
    return n;
  }
  const VertexId& basepoint() const override {
    static const VertexId p = "n";
    return p;
  }
  // d-regular tree rooted at n; children carry path-encoded ids (n:0:2...).
  // The root has d children, every other vertex d-1.
  void generate(int radius, std::map<VertexId, int, IdLess>& dist,
                std::vector<Edge>& edges) const override {
    dist.clear();
    edges.clear();
    dist["n"] = 0;
    std::vector<VertexId> frontier = {"n"};
    for (int level = 1; level <= radius; ++level) {
      std::vector<VertexId> next;
      const int fanout = (level == 1) ? degree_ : degree_ - 1;
      for (const VertexId& parent : frontier) {
        for (int j = 0; j < fanout; ++j) {
          const VertexId child = parent + ":" + std::to_string(j);
          dist[child] = level;
          edges.push_back({"E" + child.substr(1), parent, child});
          next.push_back(child);
        }
      }
      frontier = std::move(next);
    }
  }

 private:
  int degree_;
};

}  // namespace detail

// Data for a user-supplied, table-driven family: level k lists the vertices
// at distance exactly k and the edges whose far endpoint first appears at
// level k. Validated on construction by independent BFS.
struct TableLevel {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
};

struct RayDef {
  std::string name;
  // Edge-id patterns with {i}, {i+k} or {i-k} placeholders.
  std::vector<std::pair<std::string, bool>> motif;
};

struct TableFamilyData {
  std::string name;
  VertexId basepoint;
  std::vector<TableLevel> levels;
  std::vector<RayDef> rays;
  int band = 2;
};

namespace detail {

inline std::string substitute_index(const std::string& pattern, int index) {
  std::string out;
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] != '{') {
      out += pattern[i++];
      continue;
    }
    const std::size_t close = pattern.find('}', i);
    if (close == std::string::npos) throw FormatError("unbalanced '{' in ray pattern: " + pattern);
    const std::string inner = pattern.substr(i + 1, close - i - 1);
    long long value = 0;
    if (inner == "i") {
      value = index;
    } else if (inner.size() > 2 && inner[0] == 'i' && (inner[1] == '+' || inner[1] == '-')) {
      const long long k = std::stoll(inner.substr(2));
      value = inner[1] == '+' ? index + k : index - k;
    } else {
      throw FormatError("bad ray pattern placeholder: {" + inner + "}");
    }
    out += std::to_string(value);
    i = close + 1;
  }
  return out;
}

class TableFamily final : public FamilyImpl {
 public:
  explicit TableFamily(TableFamilyData data) : data_(std::move(data)) { validate(); }

  const std::string& name() const override { return data_.name; }
  const VertexId& basepoint() const override { return data_.basepoint; }
  int max_radius() const override { return static_cast<int>(data_.levels.size()) - 1; }

  void generate(int radius, std::map<VertexId, int, IdLess>& dist,
                std::vector<Edge>& edges) const override {
    dist.clear();
    edges.clear();
    for (int k = 0; k <= radius && k < static_cast<int>(data_.levels.size()); ++k) {
      for (const VertexId& v : data_.levels[k].vertices) dist[v] = k;
      for (const Edge& e : data_.levels[k].edges) edges.push_back(e);
    }
  }

  std::vector<std::string> ray_names() const override {
    std::vector<std::string> names;
    for (const RayDef& r : data_.rays) names.push_back(r.name);
    return names;
  }

  RayMotif ray_motif(const std::string& ray, int index) const override {
    for (const RayDef& r : data_.rays) {
      if (r.name != ray) continue;
      RayMotif m;
      for (const auto& [pattern, reverse] : r.motif)
        m.steps.push_back({substitute_index(pattern, index), reverse});
      return m;
    }
    throw UnknownName("family '" + data_.name + "' has no ray '" + ray + "'");
  }

  int ray_band() const override { return data_.band; }

 private:
  void validate() const {
    if (data_.name.empty()) throw InvalidArgument("table family needs a name");
    if (data_.levels.empty()) throw InvalidArgument("table family needs at least level 0");
    if (data_.levels[0].vertices.size() != 1 || data_.levels[0].vertices[0] != data_.basepoint)
      throw InvalidArgument("level 0 must contain exactly the basepoint");

    std::map<VertexId, int, IdLess> declared;
    std::map<EdgeId, Edge, IdLess> by_id;
    for (int k = 0; k < static_cast<int>(data_.levels.size()); ++k) {
      for (const VertexId& v : data_.levels[k].vertices)
        if (!declared.emplace(v, k).second)
          throw InvalidArgument("vertex declared twice: " + v);
      for (const Edge& e : data_.levels[k].edges) {
        if (!by_id.emplace(e.id, e).second) throw InvalidArgument("edge declared twice: " + e.id);
        auto ia = declared.find(e.a), ib = declared.find(e.b);
        if (ia == declared.end() || ib == declared.end())
          throw InvalidArgument("edge " + e.id + " references an undeclared vertex");
        const int da = ia->second, db = ib->second;
        // Balls are induced subgraphs, so an edge belongs to the level where
        // its later endpoint appears.
        if (std::max(da, db) != k)
          throw InvalidArgument("edge " + e.id + " must be declared at level " +
                                std::to_string(std::max(da, db)));
        if (da - db > 1 || db - da > 1)
          throw InvalidArgument("edge " + e.id + " joins levels " + std::to_string(da) + " and " +
                                std::to_string(db) + "; declared distances are inconsistent");
      }
    }

    // Independent BFS over the full description: declared level == distance.
    std::map<VertexId, std::vector<const Edge*>, IdLess> adj;
    for (const auto& [v, k] : declared) adj[v];
    for (const auto& [id, e] : by_id) {
      adj[e.a].push_back(&e);
      if (e.b != e.a) adj[e.b].push_back(&e);
    }
    std::map<VertexId, int, IdLess> bfs;
    std::queue<VertexId> q;
    bfs[data_.basepoint] = 0;
    q.push(data_.basepoint);
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      for (const Edge* e : adj.at(v)) {
        const VertexId& w = (e->a == v) ? e->b : e->a;
        if (bfs.emplace(w, bfs.at(v) + 1).second) q.push(w);
      }
    }
    // Balls are distance-closed (a geodesic to a level-k vertex stays in
    // earlier levels), so BFS over the described region must reproduce every
    // declared level exactly.
    for (const auto& [v, k] : declared) {
      auto it = bfs.find(v);
      if (it == bfs.end()) throw InvalidArgument("vertex unreachable from basepoint: " + v);
      if (it->second != k)
        throw InvalidArgument("vertex " + v + " declared at level " + std::to_string(k) +
                              " but BFS distance is " + std::to_string(it->second));
    }
  }

  TableFamilyData data_;
};

inline long long int_param(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw InvalidArgument("missing parameter: " + key);
  if (const long long* v = std::get_if<long long>(&it->second)) return *v;
  throw InvalidArgument("parameter '" + key + "' must be an integer");
}

}  // namespace detail

// Registered families: "ladder" (one end), "line" (two ends) and
// "tree" (degree >= 3). Unknown parameters are rejected.
inline GraphFamily build_family(const std::string& name, const Params& params = {}) {
  auto reject_unknown = [&params](std::initializer_list<std::string> allowed) {
    for (const auto& [key, value] : params) {
      (void)value;
      bool ok = false;
      for (const std::string& a : allowed) ok = ok || a == key;
      if (!ok) throw InvalidArgument("unknown parameter for family: " + key);
    }
  };
  if (name == "ladder") {
    reject_unknown({});
    return GraphFamily(std::make_shared<detail::LadderFamily>());
  }
  if (name == "line") {
    reject_unknown({});
    return GraphFamily(std::make_shared<detail::LineFamily>());
  }
  if (name == "tree") {
    reject_unknown({"degree"});
    return GraphFamily(std::make_shared<detail::TreeFamily>(detail::int_param(params, "degree")));
  }
  throw UnknownName("unknown family: " + name);
}

inline GraphFamily build_table_family(TableFamilyData data) {
  return GraphFamily(std::make_shared<detail::TableFamily>(std::move(data)));
}

// Closed ball of radius n around the basepoint: the subgraph induced on the
// vertices at distance <= n.
inline FiniteGraph ball(const GraphFamily& family, int n) {
  if (n < 0) throw InvalidArgument("ball radius must be >= 0");
  std::map<VertexId, int, IdLess> dist;
  std::vector<Edge> edges;
  family.generate(n, dist, edges);
  std::vector<VertexId> vertices;
  vertices.reserve(dist.size());
  for (const auto& [v, d] : dist) {
    (void)d;
    vertices.push_back(v);
  }
  return FiniteGraph(std::move(vertices), std::move(edges), family.basepoint());
}

namespace detail {

// Connected components of the subgraph induced on {v : dist(v) >= n},
// computed within the generated region. Components are ordered by their
// least frontier vertex (least distance-n member); every component has one
// because a geodesic from any member walks down to distance n inside the
// component.
struct ComplementPartition {
  std::vector<std::vector<VertexId>> members;    // sorted per component
  std::vector<std::vector<VertexId>> frontiers;  // sorted per component
  std::map<VertexId, int, IdLess> component_of;
};

inline ComplementPartition complement_partition(const std::map<VertexId, int, IdLess>& dist,
                                                const std::vector<Edge>& edges, int n) {
  std::map<VertexId, std::vector<const Edge*>, IdLess> adj;
  for (const auto& [v, d] : dist)
    if (d >= n) adj[v];
  for (const Edge& e : edges) {
    auto ia = dist.find(e.a), ib = dist.find(e.b);
    if (ia->second >= n && ib->second >= n) {
      adj[e.a].push_back(&e);
      if (e.b != e.a) adj[e.b].push_back(&e);
    }
  }

  ComplementPartition part;
  for (const auto& [v, nbrs] : adj) {
    (void)nbrs;
    if (part.component_of.count(v)) continue;
    std::vector<VertexId> comp;
    std::queue<VertexId> q;
    part.component_of[v] = -1;  // provisional mark
    q.push(v);
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      comp.push_back(u);
      for (const Edge* e : adj.at(u)) {
        const VertexId& w = (e->a == u) ? e->b : e->a;
        if (!part.component_of.count(w)) {
          part.component_of[w] = -1;
          q.push(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end(), id_less);
    part.members.push_back(std::move(comp));
  }

  // Order by least frontier vertex; the members map iterates in id order, so
  // discovery order already agrees, but sort explicitly to be safe.
  std::vector<std::vector<VertexId>> frontiers(part.members.size());
  for (std::size_t c = 0; c < part.members.size(); ++c)
    for (const VertexId& v : part.members[c])
      if (dist.at(v) == n) frontiers[c].push_back(v);
  std::vector<std::size_t> order(part.members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t c = 0; c < part.members.size(); ++c)
    if (frontiers[c].empty()) throw GraphError("complement component without frontier vertex");
  std::sort(order.begin(), order.end(),
            [&frontiers](std::size_t x, std::size_t y) { return id_less(frontiers[x][0], frontiers[y][0]); });

  ComplementPartition out;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    out.members.push_back(std::move(part.members[order[rank]]));
    out.frontiers.push_back(std::move(frontiers[order[rank]]));
    for (const VertexId& v : out.members.back()) out.component_of[v] = static_cast<int>(rank);
  }
  return out;
}

}  // namespace detail

struct ComplementComponent {
  std::string id;                 // "C:<n>:<i>"
  std::vector<VertexId> frontier; // members at distance exactly n
  bool finite;                    // stabilized within the horizon (advisory)
};

// Level-n approximation to the ends: the components of the subgraph induced
// on vertices at distance >= n, observed out to `horizon`. A component is
// flagged infinite if it still acquired vertices between radius horizon-1
// and horizon. There is no finite certification of end-finiteness for
// arbitrary generators; the flag is advisory and the horizon explicit.
inline std::vector<ComplementComponent> complement_components(const GraphFamily& family, int n,
                                                              int horizon) {
  if (n < 0) throw InvalidArgument("level must be >= 0");
  if (horizon <= n) throw InvalidArgument("horizon must exceed the level");

  std::map<VertexId, int, IdLess> dist;
  std::vector<Edge> edges;
  family.generate(horizon, dist, edges);
  const auto part = detail::complement_partition(dist, edges, n);

  std::vector<ComplementComponent> out;
  for (std::size_t c = 0; c < part.members.size(); ++c) {
    bool grows = false;
    for (const VertexId& v : part.members[c]) grows = grows || dist.at(v) == horizon;
    out.push_back({"C:" + std::to_string(n) + ":" + std::to_string(c), part.frontiers[c], !grows});
  }
  return out;
}

}  // namespace graphends
