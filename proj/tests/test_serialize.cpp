// Unit tests for JSON round trips, DOT export and conformance of every
// emitted document to the schemas shipped under docs/schemas/.
#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "graphends/graphends.hpp"

using namespace graphends;

namespace {

// Minimal JSON-schema checker covering the subset the shipped schemas use:
// type (string or list), required, properties, items, enum,
// additionalProperties (schema form).
bool matches_type(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  throw std::runtime_error("unknown schema type: " + type);
}

void validate_schema(const json& value, const json& schema, const std::string& at) {
  if (schema.contains("type")) {
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(value, t.get<std::string>());
    } else {
      for (const auto& alt : t) ok = ok || matches_type(value, alt.get<std::string>());
    }
    if (!ok) throw std::runtime_error("type mismatch at " + at);
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& alt : schema.at("enum")) ok = ok || alt == value;
    if (!ok) throw std::runtime_error("enum mismatch at " + at);
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema.at("required"))
        if (!value.contains(key.get<std::string>()))
          throw std::runtime_error("missing required '" + key.get<std::string>() + "' at " + at);
    const json props = schema.value("properties", json::object());
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (props.contains(it.key())) {
        validate_schema(it.value(), props.at(it.key()), at + "." + it.key());
      } else if (schema.contains("additionalProperties")) {
        const json& ap = schema.at("additionalProperties");
        if (ap.is_boolean() && !ap.get<bool>())
          throw std::runtime_error("unexpected key '" + it.key() + "' at " + at);
        if (ap.is_object()) validate_schema(it.value(), ap, at + "." + it.key());
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const auto& item : value) validate_schema(item, schema.at("items"), at + "[" + std::to_string(i++) + "]");
  }
}

json load_schema(const std::string& name) {
  const std::string path = std::string(GRAPHENDS_SOURCE_DIR) + "/docs/schemas/" + name;
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

void check_against(const json& value, const std::string& schema_name) {
  CHECK_NOTHROW(validate_schema(value, load_schema(schema_name), "$"));
}

}  // namespace

TEST_CASE("word JSON round trip") {
  const Word w = word_from_json(json::parse("[1,-2,3,-1]"));
  CHECK(w.rank == 3);
  CHECK(word_to_json(w).dump() == "[1,-2,3,-1]");
  CHECK(word_from_json(json::array()).letters.empty());
  CHECK_THROWS_AS(word_from_json(json::parse("[0]")), FormatError);
  CHECK_THROWS_AS(word_from_json(json::parse("[1.5]")), FormatError);
  CHECK_THROWS_AS(word_from_json(json::parse("{}")), FormatError);
  CHECK_THROWS_AS(word_from_json(json::parse("[4]"), 2), FormatError);
  check_against(word_to_json(w), "word.schema.json");
}

TEST_CASE("trace JSON round trip") {
  const EdgePath p = {{"B:0", false}, {"T:1", true}};
  const json j = trace_to_json(p);
  CHECK(j.dump() == "[\"+B:0\",\"-T:1\"]");
  CHECK(trace_from_json(j) == p);
  CHECK_THROWS_AS(oriented_edge_from_string("B:0"), FormatError);
  CHECK_THROWS_AS(oriented_edge_from_string("+"), FormatError);
  check_against(j, "trace.schema.json");
}

TEST_CASE("loop JSON round trip") {
  const LoopSpec fig = builtin_loop("figure4");
  const json j = loop_to_json(fig);
  check_against(j, "loop.schema.json");
  const LoopSpec parsed = loop_from_json(j);
  const auto ladder = build_family("ladder");
  for (int n : {2, 4}) CHECK(theta_trace(parsed, ladder, n) == theta_trace(fig, ladder, n));

  CHECK_THROWS_AS(loop_from_json(json::parse(R"({"name":"x"})")), FormatError);
  CHECK_THROWS_AS(loop_from_json(json::parse(R"({"name":"x","segments":[{"type":"warp"}]})")),
                  FormatError);
}

TEST_CASE("family JSON: build, trace, and reject malformed input") {
  // Two rungs-connected arms escaping to a common end, described to depth 8.
  json levels = json::array();
  levels.push_back({{"vertices_at_level", {"p"}}, {"edges", json::array()}});
  for (int k = 1; k <= 8; ++k) {
    const std::string ks = std::to_string(k);
    const std::string prev = std::to_string(k - 1);
    json edges = json::array();
    edges.push_back({{"id", "eu:" + prev}, {"a", k == 1 ? "p" : "u:" + prev}, {"b", "u:" + ks}});
    edges.push_back({{"id", "ed:" + prev}, {"a", k == 1 ? "p" : "d:" + prev}, {"b", "d:" + ks}});
    edges.push_back({{"id", "rung:" + ks}, {"a", "u:" + ks}, {"b", "d:" + ks}});
    levels.push_back({{"vertices_at_level", {"u:" + ks, "d:" + ks}}, {"edges", edges}});
  }
  const json doc = {{"name", "beads"},
                    {"basepoint", "p"},
                    {"levels", levels},
                    {"rays", json::array({json{{"name", "up"}, {"motif", {"+eu:{i}"}}},
                                          json{{"name", "down"}, {"motif", {"+ed:{i}"}}}})}};
  check_against(doc, "family.schema.json");

  const auto family = build_table_family(family_data_from_json(doc));
  CHECK(family.name() == "beads");
  CHECK(ball(family, 2).vertices().size() == 5);

  // Out one arm and back the other: both arms lie in the same component at
  // every level (the rungs connect them), so this is a legal loop.
  const LoopSpec around{"around", {RayOut{"up", 0}, RayBack{"down", 0}}};
  const EdgePath p = theta_trace(around, family, 2);
  CHECK_FALSE(p.empty());
  const auto tree = spanning_tree(truncate(family, 2).graph);
  CHECK_FALSE(reduce(trace_word(p, tree)).empty());

  CHECK_THROWS_AS(family_data_from_json(json::parse(R"({"name":"x"})")), FormatError);
  json bad = doc;
  bad["levels"][1]["edges"][0].erase("b");
  CHECK_THROWS_AS(family_data_from_json(bad), FormatError);
}

TEST_CASE("emitted documents conform to the shipped schemas") {
  const auto ladder = build_family("ladder");
  const auto line = build_family("line");

  check_against(quotient_to_json(truncate(ladder, 3)), "quotient.schema.json");
  check_against(components_to_json(line, 2, 8, complement_components(line, 2, 8)),
                "ends.schema.json");
  check_against(psi_to_json(ladder, psi_family(builtin_loop("figure4"), ladder, 5)),
                "psi.schema.json");

  const Word w = word_from_json(json::parse("[1,2,-1,-2]"));
  check_against(commlength_to_json(w, commutator_length(w)), "commlength.schema.json");
  const Word unbalanced = word_from_json(json::parse("[1,1]"));
  check_against(commlength_to_json(unbalanced, commutator_length(unbalanced)),
                "commlength.schema.json");

  check_against(ladder_table_to_json(6), "ladder_table.schema.json");
  check_against(homology_report_to_json(nonnullhomologous_report(builtin_loop("figure4"), ladder, 6)),
                "homology_report.schema.json");

  const EdgePath path = theta_trace(builtin_loop("roundtrip"), ladder, 4);
  const auto tree = spanning_tree(truncate(ladder, 4).graph);
  const json trace_output = {{"family", "ladder"},
                             {"loop", "roundtrip"},
                             {"level", 4},
                             {"path", trace_to_json(path)},
                             {"word", word_to_json(reduce(trace_word(path, tree)))}};
  check_against(trace_output, "trace_output.schema.json");

  const json err = {{"error", {{"type", "unknown_name"}, {"message", "unknown family: x"}}}};
  check_against(err, "error.schema.json");

  // The validator itself rejects nonconforming documents.
  CHECK_THROWS(validate_schema(json::parse(R"({"max": "six"})"), load_schema("ladder_table.schema.json"),
                               "$"));
}

TEST_CASE("DOT export is deterministic and styled") {
  const auto ladder = build_family("ladder");
  const auto q = truncate(ladder, 2);
  const std::string dot1 = to_dot(q);
  const std::string dot2 = to_dot(q);
  CHECK(dot1 == dot2);
  CHECK(dot1.find("\"C:2:0\" [style=filled") != std::string::npos);
  CHECK(dot1.find("\"b:0\" [peripheries=2]") != std::string::npos);
  CHECK(dot1.find("\"b:0\" -- \"b:1\" [label=\"B:0\"]") != std::string::npos);

  const std::string plain = to_dot(ball(ladder, 2));
  CHECK(plain.find("peripheries=2") != std::string::npos);
  CHECK(plain.find("style=filled") == std::string::npos);
}
