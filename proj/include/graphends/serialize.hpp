// serialize.hpp — JSON and DOT forms of the library's values: words as
// arrays of signed integers, traces as signed edge ids, user-defined
// families and loops, and the diagnostic reports emitted by the CLI.
#pragma once

#include <sstream>

#include <json.hpp>

#include "graphends/homology.hpp"

namespace graphends {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Words: arrays of signed integers, letter k being +-(chord index + 1).

inline json word_to_json(const Word& w) {
  json arr = json::array();
  for (const Letter& l : w.letters) arr.push_back(l.sign * (l.gen + 1));
  return arr;
}

inline json word_to_json(const ReducedWord& w) { return word_to_json(w.as_word()); }

// Rank is inferred as the largest letter magnitude unless given explicitly.
inline Word word_from_json(const json& j, int rank = -1) {
  if (!j.is_array()) throw FormatError("a word must be a JSON array of nonzero integers");
  Word w;
  for (const auto& item : j) {
    if (!item.is_number_integer()) throw FormatError("word letters must be integers");
    const long long v = item.get<long long>();
    if (v == 0) throw FormatError("word letters must be nonzero");
    if (v > 1'000'000 || v < -1'000'000) throw FormatError("word letter out of range");
    w.letters.push_back({static_cast<int>((v > 0 ? v : -v) - 1), v > 0 ? 1 : -1});
    if (w.letters.back().gen + 1 > w.rank) w.rank = w.letters.back().gen + 1;
  }
  if (rank >= 0) {
    if (w.rank > rank) throw FormatError("word letter outside declared rank");
    w.rank = rank;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Edge paths: arrays of signed edge ids ("+B:0", "-T:1").

inline std::string oriented_edge_to_string(const OrientedEdge& s) {
  return (s.reverse ? "-" : "+") + s.edge;
}

inline OrientedEdge oriented_edge_from_string(const std::string& s) {
  if (s.size() < 2 || (s[0] != '+' && s[0] != '-'))
    throw FormatError("a signed edge id must start with '+' or '-': " + s);
  return {s.substr(1), s[0] == '-'};
}

inline json trace_to_json(const EdgePath& path) {
  json arr = json::array();
  for (const OrientedEdge& s : path) arr.push_back(oriented_edge_to_string(s));
  return arr;
}

inline EdgePath trace_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("a trace must be a JSON array of signed edge ids");
  EdgePath path;
  for (const auto& item : j) {
    if (!item.is_string()) throw FormatError("trace entries must be strings");
    path.push_back(oriented_edge_from_string(item.get<std::string>()));
  }
  return path;
}

// ---------------------------------------------------------------------------
// User-defined families and loops.

namespace detail {

inline const json& require_field(const json& j, const char* key, const char* context) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(context) + ": missing field '" + key + "'");
  return *it;
}

}  // namespace detail

// {"name": ..., "basepoint": ..., "levels": [{"vertices": [...], "edges":
//  [{"id","a","b"}, ...]}, ...], "rays": [{"name", "motif": ["+E:{i}", ...]}]}
inline TableFamilyData family_data_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("a family document must be a JSON object");
  TableFamilyData data;
  data.name = detail::require_field(j, "name", "family").get<std::string>();
  data.basepoint = detail::require_field(j, "basepoint", "family").get<std::string>();
  const json& levels = detail::require_field(j, "levels", "family");
  if (!levels.is_array()) throw FormatError("family: 'levels' must be an array");
  for (const json& level : levels) {
    TableLevel tl;
    const json& vs = detail::require_field(level, "vertices_at_level", "family level");
    if (!vs.is_array()) throw FormatError("family: 'vertices_at_level' must be an array");
    for (const auto& v : vs) tl.vertices.push_back(v.get<std::string>());
    const json& es = detail::require_field(level, "edges", "family level");
    if (!es.is_array()) throw FormatError("family: 'edges' must be an array");
    for (const json& e : es)
      tl.edges.push_back({detail::require_field(e, "id", "edge").get<std::string>(),
                          detail::require_field(e, "a", "edge").get<std::string>(),
                          detail::require_field(e, "b", "edge").get<std::string>()});
    data.levels.push_back(std::move(tl));
  }
  if (j.contains("rays")) {
    for (const json& r : j.at("rays")) {
      RayDef def;
      def.name = detail::require_field(r, "name", "ray").get<std::string>();
      for (const auto& step : detail::require_field(r, "motif", "ray")) {
        const OrientedEdge s = oriented_edge_from_string(step.get<std::string>());
        def.motif.emplace_back(s.edge, s.reverse);
      }
      data.rays.push_back(std::move(def));
    }
  }
  if (j.contains("band")) data.band = j.at("band").get<int>();
  return data;
}

// {"name": ..., "segments": [{"type": "path", "steps": ["+B:0", ...]} |
//  {"type": "ray_out"|"ray_back", "ray": ..., "start": k}, ...]}
inline LoopSpec loop_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("a loop document must be a JSON object");
  LoopSpec loop;
  loop.name = detail::require_field(j, "name", "loop").get<std::string>();
  for (const json& seg : detail::require_field(j, "segments", "loop")) {
    const std::string type = detail::require_field(seg, "type", "segment").get<std::string>();
    if (type == "path") {
      ExplicitPath path;
      for (const auto& step : detail::require_field(seg, "steps", "segment"))
        path.steps.push_back(oriented_edge_from_string(step.get<std::string>()));
      loop.segments.push_back(std::move(path));
    } else if (type == "ray_out" || type == "ray_back") {
      const std::string ray = detail::require_field(seg, "ray", "segment").get<std::string>();
      const int start = detail::require_field(seg, "start", "segment").get<int>();
      if (type == "ray_out")
        loop.segments.push_back(RayOut{ray, start});
      else
        loop.segments.push_back(RayBack{ray, start});
    } else {
      throw FormatError("unknown segment type: " + type);
    }
  }
  return loop;
}

inline json loop_to_json(const LoopSpec& loop) {
  json segs = json::array();
  for (const LoopSegment& seg : loop.segments) {
    if (const auto* path = std::get_if<ExplicitPath>(&seg)) {
      json steps = json::array();
      for (const OrientedEdge& s : path->steps) steps.push_back(oriented_edge_to_string(s));
      segs.push_back({{"type", "path"}, {"steps", steps}});
    } else if (const auto* out = std::get_if<RayOut>(&seg)) {
      segs.push_back({{"type", "ray_out"}, {"ray", out->ray}, {"start", out->start}});
    } else {
      const auto& back = std::get<RayBack>(seg);
      segs.push_back({{"type", "ray_back"}, {"ray", back.ray}, {"start", back.start}});
    }
  }
  return {{"name", loop.name}, {"segments", segs}};
}

// ---------------------------------------------------------------------------
// Graphs and reports.

inline json graph_to_json(const FiniteGraph& g) {
  json out;
  out["basepoint"] = g.basepoint();
  out["vertices"] = g.vertices();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({{"id", e.id}, {"a", e.a}, {"b", e.b}});
  out["edges"] = edges;
  return out;
}

inline json quotient_to_json(const QuotientGraph& q) {
  json out = graph_to_json(q.graph);
  out["level"] = q.level;
  json collapsed = json::object();
  for (const std::string& c : q.collapsed) collapsed[c] = q.collapsed_frontier.at(c);
  out["collapsed"] = collapsed;
  return out;
}

inline json components_to_json(const GraphFamily& family, int level, int horizon,
                               const std::vector<ComplementComponent>& components) {
  json out;
  out["family"] = family.name();
  out["level"] = level;
  out["horizon"] = horizon;
  out["count"] = components.size();
  json comps = json::array();
  for (const ComplementComponent& c : components)
    comps.push_back({{"id", c.id}, {"frontier", c.frontier}, {"finite", c.finite}});
  out["components"] = comps;
  return out;
}

inline json coherence_to_json(const CoherenceReport& r) {
  json out;
  out["pass"] = r.pass;
  if (r.first_failure)
    out["first_failure"] = {{"m", r.first_failure->first}, {"n", r.first_failure->second}};
  else
    out["first_failure"] = nullptr;
  return out;
}

inline json multiplicities_to_json(const std::vector<LineageMultiplicity>& ms) {
  json arr = json::array();
  for (const LineageMultiplicity& m : ms)
    arr.push_back({{"edge", m.edge},
                   {"first_level", m.first_level},
                   {"counts", m.counts},
                   {"stabilized", m.stabilized}});
  return arr;
}

inline json family_levels_to_json(const CoherentFamily& fam) {
  json levels = json::object();
  for (const auto& [n, w] : fam.levels) levels[std::to_string(n)] = word_to_json(w);
  return levels;
}

inline json psi_to_json(const GraphFamily& family, const CoherentFamily& fam) {
  json out;
  out["family"] = family.name();
  out["loop"] = fam.loop;
  out["max_level"] = fam.max_level;
  out["levels"] = family_levels_to_json(fam);
  out["coherence"] = coherence_to_json(check_coherence(fam));
  out["multiplicities"] = multiplicities_to_json(letter_multiplicity(fam));
  return out;
}

inline json commlength_to_json(const Word& input, const CommLengthResult& r) {
  json out;
  out["word"] = word_to_json(input);
  out["in_commutator_subgroup"] = r.in_commutator_subgroup;
  if (r.in_commutator_subgroup) {
    out["cl"] = r.cl;
    json pairs = json::array();
    for (const auto& [a, b] : r.witness.pairs) pairs.push_back({a, b});
    out["witness"] = pairs;
  } else {
    out["cl"] = nullptr;
    out["witness"] = nullptr;
  }
  out["pairings_considered"] = r.pairings_considered;
  return out;
}

inline json ladder_table_to_json(int max_n) {
  json rows = json::array();
  for (int n = 1; n <= max_n; ++n) {
    const IntMatrix m = ladder_matrix(n);
    Word w{n, {}};
    for (int i = 0; i < n; ++i) w.letters.push_back({i, 1});
    for (int i = 0; i < n; ++i) w.letters.push_back({i, -1});
    rows.push_back({{"n", n},
                    {"det", int_det(m)},
                    {"rank", gf2_rank(to_gf2(m))},
                    {"cl", commutator_length(w).cl}});
  }
  return {{"max", max_n}, {"rows", rows}};
}

inline json homology_report_to_json(const HomologyReport& r) {
  json rows = json::array();
  for (const HomologyLevelRow& row : r.rows) {
    json jr;
    jr["level"] = row.level;
    jr["word"] = row.word;
    jr["in_commutator_subgroup"] = row.in_commutator_subgroup;
    jr["cl"] = row.cl ? json(*row.cl) : json(nullptr);
    jr["cycle_trivial_z"] = row.cycle_trivial_z;
    jr["cycle_trivial_z2"] = row.cycle_trivial_z2;
    rows.push_back(std::move(jr));
  }
  return {{"family", r.family},
          {"loop", r.loop},
          {"max_level", r.max_level},
          {"rows", rows},
          {"non_nullhomologous_evidence", r.non_nullhomologous_evidence}};
}

inline std::string homology_report_to_text(const HomologyReport& r) {
  std::ostringstream os;
  os << "loop " << r.loop << " on family " << r.family << ", levels 1.." << r.max_level << "\n";
  os << "level  in_[F,F]  cl  cycle_Z  cycle_Z2\n";
  for (const HomologyLevelRow& row : r.rows) {
    os << row.level << "      " << (row.in_commutator_subgroup ? "yes" : "no ") << "       ";
    if (row.cl)
      os << *row.cl;
    else
      os << "-";
    os << "   " << (row.cycle_trivial_z ? "yes" : "no") << "      "
       << (row.cycle_trivial_z2 ? "yes" : "no") << "\n";
  }
  os << (r.non_nullhomologous_evidence
             ? "evidence: non-nullhomologous (cl grows while the cycle space stays trivial)\n"
             : "evidence: none\n");
  return os.str();
}

// ---------------------------------------------------------------------------
// DOT export.

inline std::string to_dot(const FiniteGraph& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  os << "  node [shape=circle];\n";
  for (const VertexId& v : g.vertices()) {
    os << "  \"" << v << "\"";
    if (v == g.basepoint()) os << " [peripheries=2]";
    os << ";\n";
  }
  for (const Edge& e : g.edges())
    os << "  \"" << e.a << "\" -- \"" << e.b << "\" [label=\"" << e.id << "\"];\n";
  os << "}\n";
  return os.str();
}

// Collapsed vertices are drawn filled.
inline std::string to_dot(const QuotientGraph& q, const std::string& name = "quotient") {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  os << "  node [shape=circle];\n";
  const std::set<std::string, IdLess> collapsed(q.collapsed.begin(), q.collapsed.end());
  for (const VertexId& v : q.graph.vertices()) {
    os << "  \"" << v << "\"";
    if (collapsed.count(v))
      os << " [style=filled, fillcolor=gray80, shape=doublecircle]";
    else if (v == q.graph.basepoint())
      os << " [peripheries=2]";
    os << ";\n";
  }
  for (const Edge& e : q.graph.edges())
    os << "  \"" << e.a << "\" -- \"" << e.b << "\" [label=\"" << e.id << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace graphends
