// Unit tests for identifiers, finite multigraphs, families, balls and
// complement components.
#include <catch2/catch_amalgamated.hpp>

#include "graphends/family.hpp"

using namespace graphends;

namespace {

// Independent distance oracle: plain BFS over the adjacency of a graph.
std::map<VertexId, int, IdLess> bfs_distances(const FiniteGraph& g) {
  std::map<VertexId, int, IdLess> dist;
  std::queue<VertexId> q;
  dist[g.basepoint()] = 0;
  q.push(g.basepoint());
  const auto inc = g.incidence();
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    for (std::size_t i : inc.at(v)) {
      const Edge& e = g.edges()[i];
      const VertexId& w = e.a == v ? e.b : e.a;
      if (dist.emplace(w, dist.at(v) + 1).second) q.push(w);
    }
  }
  return dist;
}

GraphFamily tree3() { return build_family("tree", {{"degree", ParamValue{3LL}}}); }

}  // namespace

TEST_CASE("id order compares segments numerically") {
  CHECK(id_less("b:2", "b:10"));
  CHECK(id_less("b:10", "t:0"));
  CHECK(id_less("z:-3", "z:2"));
  CHECK(id_less("z:-5", "z:-2"));
  CHECK(id_less("C:2:0", "b:0"));
  CHECK(id_less("n:0", "n:0:1"));
  CHECK_FALSE(id_less("b:3", "b:3"));
  CHECK(compare_ids("t:7", "t:7") == 0);
}

TEST_CASE("finite graph validates its invariants") {
  CHECK_THROWS_AS(FiniteGraph({"a"}, {{"e", "a", "x"}}, "a"), GraphError);
  CHECK_THROWS_AS(FiniteGraph({"a", "b"}, {}, "x"), GraphError);
  CHECK_THROWS_AS(FiniteGraph({"a", "a"}, {}, "a"), GraphError);
  CHECK_THROWS_AS(FiniteGraph({"a", "b"}, {{"e", "a", "b"}, {"e", "b", "a"}}, "a"), GraphError);

  // Parallel edges and self-loops are fine.
  FiniteGraph g({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}, {"l", "a", "a"}}, "a");
  CHECK(g.degree("a") == 4);
  CHECK(g.degree("b") == 2);
  CHECK(is_connected(g));
  CHECK_FALSE(is_connected(FiniteGraph({"a", "b"}, {}, "a")));
}

TEST_CASE("build_family rejects bad requests") {
  CHECK_THROWS_AS(build_family("moebius"), UnknownName);
  CHECK_THROWS_AS(build_family("tree", {{"degree", ParamValue{2LL}}}), InvalidArgument);
  CHECK_THROWS_AS(build_family("tree"), InvalidArgument);
  CHECK_THROWS_AS(build_family("ladder", {{"width", ParamValue{2LL}}}), InvalidArgument);
  CHECK_THROWS_AS(ball(build_family("line"), -1), InvalidArgument);
}

TEST_CASE("line balls are paths") {
  const auto line = build_family("line");
  const FiniteGraph b3 = ball(line, 3);
  CHECK(b3.vertices().size() == 7);
  CHECK(b3.edges().size() == 6);
  CHECK(b3.basepoint() == "z:0");

  const FiniteGraph b0 = ball(line, 0);
  CHECK(b0.vertices().size() == 1);
  CHECK(b0.edges().empty());
}

TEST_CASE("ladder balls") {
  // With basepoint b:0 the top vertex t:i sits at distance i+1, so the
  // radius-n ball has n+1 bottom vertices, n top vertices and 3n-1 edges.
  const auto ladder = build_family("ladder");
  for (int n = 1; n <= 8; ++n) {
    const FiniteGraph b = ball(ladder, n);
    CHECK(b.vertices().size() == static_cast<std::size_t>(2 * n + 1));
    CHECK(b.edges().size() == static_cast<std::size_t>(3 * n - 1));
  }
  const FiniteGraph b1 = ball(ladder, 1);
  CHECK(b1.has_vertex("t:0"));
  CHECK_FALSE(b1.has_vertex("t:1"));
  CHECK(b1.has_edge("B:0"));
  CHECK(b1.has_edge("R:0"));
  CHECK_FALSE(b1.has_edge("T:0"));
}

TEST_CASE("tree balls") {
  const FiniteGraph b0 = ball(tree3(), 0);
  CHECK(b0.vertices().size() == 1);
  CHECK(b0.edges().empty());

  const FiniteGraph b1 = ball(tree3(), 1);
  CHECK(b1.vertices().size() == 4);
  CHECK(b1.edges().size() == 3);

  const FiniteGraph b2 = ball(tree3(), 2);
  CHECK(b2.vertices().size() == 1 + 3 + 6);
  CHECK(b2.edges().size() == 9);
}

TEST_CASE("ball vertices match independent BFS at depth n") {
  for (const char* name : {"ladder", "line"}) {
    const auto family = build_family(name);
    for (int n = 0; n <= 10; ++n) {
      const auto oracle = bfs_distances(ball(family, n + 2));
      std::set<VertexId, IdLess> expected;
      for (const auto& [v, d] : oracle)
        if (d <= n) expected.insert(v);
      const FiniteGraph b = ball(family, n);
      const std::set<VertexId, IdLess> got(b.vertices().begin(), b.vertices().end());
      REQUIRE(got == expected);
    }
  }
  for (int n = 0; n <= 6; ++n) {
    const auto oracle = bfs_distances(ball(tree3(), n + 2));
    std::size_t expected = 0;
    for (const auto& [v, d] : oracle)
      if (d <= n) ++expected;
    CHECK(ball(tree3(), n).vertices().size() == expected);
  }
}

TEST_CASE("balls are connected") {
  for (int n = 0; n <= 10; ++n) {
    CHECK(is_connected(ball(build_family("ladder"), n)));
    CHECK(is_connected(ball(build_family("line"), n)));
  }
  for (int n = 0; n <= 6; ++n) CHECK(is_connected(ball(tree3(), n)));
}

TEST_CASE("complement component counts match the ends") {
  const auto line = build_family("line");
  const auto ladder = build_family("ladder");
  for (int n = 1; n <= 10; ++n) {
    CHECK(complement_components(line, n, n + 6).size() == 2);
    CHECK(complement_components(ladder, n, n + 6).size() == 1);
  }
  // 3-regular tree: one component per vertex at distance n.
  for (int n = 1; n <= 6; ++n)
    CHECK(complement_components(tree3(), n, n + 6).size() ==
          static_cast<std::size_t>(3 * (1 << (n - 1))));

  const auto comps = complement_components(line, 2, 8);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].id == "C:2:0");
  CHECK(comps[0].frontier == std::vector<VertexId>{"z:-2"});
  CHECK_FALSE(comps[0].finite);
  CHECK(comps[1].frontier == std::vector<VertexId>{"z:2"});
  CHECK_FALSE(comps[1].finite);

  CHECK_THROWS_AS(complement_components(line, 5, 5), InvalidArgument);
  CHECK_THROWS_AS(complement_components(line, 5, 3), InvalidArgument);
}

TEST_CASE("tree component counts are non-decreasing in the level") {
  std::size_t prev = 0;
  for (int n = 1; n <= 6; ++n) {
    const std::size_t count = complement_components(tree3(), n, n + 5).size();
    CHECK(count >= prev);
    prev = count;
  }
}

TEST_CASE("component partition is stable under a larger horizon") {
  for (const char* name : {"ladder", "line"}) {
    const auto family = build_family(name);
    for (int n = 1; n <= 8; ++n) {
      const auto small = complement_components(family, n, n + 3);
      const auto large = complement_components(family, n, n + 9);
      REQUIRE(small.size() == large.size());
      for (std::size_t i = 0; i < small.size(); ++i)
        CHECK(small[i].frontier == large[i].frontier);
    }
  }
}

TEST_CASE("table families validate distances by BFS") {
  // A fork: basepoint p, a 2-path to the left, a 2-path to the right.
  TableFamilyData data;
  data.name = "fork";
  data.basepoint = "p";
  data.levels.push_back({{"p"}, {}});
  data.levels.push_back({{"l:1", "r:1"}, {{"el:1", "p", "l:1"}, {"er:1", "p", "r:1"}}});
  data.levels.push_back({{"l:2", "r:2"}, {{"el:2", "l:1", "l:2"}, {"er:2", "r:1", "r:2"}}});

  const auto family = build_table_family(data);
  CHECK(family.max_radius() == 2);
  CHECK(ball(family, 1).vertices().size() == 3);
  CHECK(ball(family, 2).edges().size() == 4);
  CHECK_THROWS_AS(ball(family, 3), InvalidArgument);
  CHECK(complement_components(family, 1, 2).size() == 2);

  // Declared level contradicts the BFS distance: y claims distance 1 but is
  // only reachable through l:2.
  TableFamilyData bad = data;
  bad.levels[1].vertices.push_back("y");
  bad.levels[2].edges.push_back({"ey", "y", "l:2"});
  CHECK_THROWS_AS(build_table_family(bad), InvalidArgument);

  // Unreachable vertex.
  TableFamilyData orphan = data;
  orphan.levels[2].vertices.push_back("x");
  CHECK_THROWS_AS(build_table_family(orphan), InvalidArgument);

  // Edge joining levels two apart.
  TableFamilyData jump = data;
  jump.levels[2].edges.push_back({"jump", "p", "l:2"});
  CHECK_THROWS_AS(build_table_family(jump), InvalidArgument);

  // Duplicate edge id.
  TableFamilyData dup = data;
  dup.levels[2].edges.push_back({"el:1", "l:1", "l:2"});
  CHECK_THROWS_AS(build_table_family(dup), InvalidArgument);
}

TEST_CASE("finite complement components are flagged within the horizon") {
  // One infinite arm and one finite spur off the basepoint.
  TableFamilyData data;
  data.name = "spur";
  data.basepoint = "p";
  data.levels.push_back({{"p"}, {}});
  data.levels.push_back({{"a:1", "s:1"}, {{"ea:1", "p", "a:1"}, {"es:1", "p", "s:1"}}});
  data.levels.push_back({{"a:2", "s:2"}, {{"ea:2", "a:1", "a:2"}, {"es:2", "s:1", "s:2"}}});
  for (int k = 3; k <= 8; ++k)
    data.levels.push_back(
        {{"a:" + std::to_string(k)},
         {{"ea:" + std::to_string(k), "a:" + std::to_string(k - 1), "a:" + std::to_string(k)}}});

  const auto family = build_table_family(data);
  const auto comps = complement_components(family, 1, 6);
  REQUIRE(comps.size() == 2);
  CHECK_FALSE(comps[0].finite);  // a:... keeps growing
  CHECK(comps[1].finite);        // s:... stabilized at level 2
}
