// graphends_cli.cpp — command-line front end: quotient graphs, end counts,
// loop traces, coherent families, commutator lengths, and the homology
// report, as JSON/text/DOT.
//
// Exit codes: 0 success, 2 usage or malformed input, 3 unknown family/loop,
// 4 pairing cap exceeded, 1 any other error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "graphends/graphends.hpp"

namespace {

using graphends::json;

constexpr int kDefaultLevelCap = 16;

struct FamilyOptions {
  std::string name;
  std::string file;
  std::vector<std::string> params;
};

struct LoopOptions {
  std::string name;
  std::string file;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw graphends::FormatError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw graphends::FormatError("malformed JSON in " + path + ": " + e.what());
  }
}

graphends::Params parse_params(const std::vector<std::string>& kvs) {
  graphends::Params params;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw graphends::InvalidArgument("--param expects key=value, got: " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      std::size_t used = 0;
      const long long n = std::stoll(value, &used);
      if (used == value.size()) {
        params[key] = n;
        continue;
      }
    } catch (const std::exception&) {
    }
    params[key] = value;
  }
  return params;
}

graphends::GraphFamily resolve_family(const FamilyOptions& opt) {
  if (opt.name.empty() == opt.file.empty())
    throw graphends::InvalidArgument("give exactly one of --family or --family-file");
  if (!opt.name.empty()) return graphends::build_family(opt.name, parse_params(opt.params));
  return graphends::build_table_family(graphends::family_data_from_json(read_json_file(opt.file)));
}

graphends::LoopSpec resolve_loop(const LoopOptions& opt) {
  if (opt.name.empty() == opt.file.empty())
    throw graphends::InvalidArgument("give exactly one of --loop or --loop-file");
  if (!opt.name.empty()) return graphends::builtin_loop(opt.name);
  return graphends::loop_from_json(read_json_file(opt.file));
}

void check_level_cap(int level, int cap) {
  if (level > cap)
    throw graphends::InvalidArgument("level " + std::to_string(level) + " exceeds the cap of " +
                                     std::to_string(cap) + " (raise with --level-cap)");
  if (level < 1) throw graphends::InvalidArgument("level must be >= 1");
}

unsigned long long pairing_cap_from_env(unsigned long long flag_value) {
  if (flag_value != graphends::kDefaultPairingCap) return flag_value;
  if (const char* env = std::getenv("GRAPHENDS_PAIRING_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw graphends::InvalidArgument("GRAPHENDS_PAIRING_CAP is not a number");
    }
  }
  return flag_value;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-level computations on locally finite graphs with ends"};
  app.require_subcommand(1);
  int level_cap = kDefaultLevelCap;
  app.add_option("--level-cap", level_cap, "maximum accepted level")->capture_default_str();

  FamilyOptions family_opt;
  LoopOptions loop_opt;
  std::string format = "json";
  int level = 1;
  int horizon = -1;
  int max_level = 6;
  std::string word_text;
  unsigned long long pairing_cap = graphends::kDefaultPairingCap;

  auto add_family_flags = [&](CLI::App* cmd) {
    cmd->add_option("--family", family_opt.name, "built-in family name (ladder, line, tree)");
    cmd->add_option("--family-file", family_opt.file, "path to a family JSON document");
    cmd->add_option("--param", family_opt.params, "family parameter, key=value (e.g. degree=3)");
  };
  auto add_loop_flags = [&](CLI::App* cmd) {
    cmd->add_option("--loop", loop_opt.name, "built-in loop name (trivial, square, roundtrip, figure4)");
    cmd->add_option("--loop-file", loop_opt.file, "path to a loop JSON document");
  };

  CLI::App* truncate_cmd = app.add_subcommand("truncate", "emit the level-n quotient graph");
  add_family_flags(truncate_cmd);
  truncate_cmd->add_option("--level", level, "level n")->required();
  truncate_cmd->add_option("--format", format, "json | dot")->capture_default_str();

  CLI::App* ends_cmd = app.add_subcommand("ends", "complement component count at a level");
  add_family_flags(ends_cmd);
  ends_cmd->add_option("--level", level, "level n")->required();
  ends_cmd->add_option("--horizon", horizon, "observation horizon (> level)")->required();
  ends_cmd->add_option("--format", format, "json | text")->capture_default_str();

  CLI::App* trace_cmd = app.add_subcommand("trace", "word of a loop at a level");
  add_family_flags(trace_cmd);
  add_loop_flags(trace_cmd);
  trace_cmd->add_option("--level", level, "level n")->required();
  trace_cmd->add_option("--format", format, "json | text")->capture_default_str();

  CLI::App* psi_cmd = app.add_subcommand("psi", "coherent family of a loop with diagnostics");
  add_family_flags(psi_cmd);
  add_loop_flags(psi_cmd);
  psi_cmd->add_option("--max", max_level, "maximum level")->capture_default_str();

  CLI::App* cl_cmd = app.add_subcommand("commlength", "commutator length of a word");
  cl_cmd->add_option("--word", word_text, "word as a JSON array, e.g. [1,2,-1,-2]")->required();
  cl_cmd->add_option("--pairing-cap", pairing_cap, "pairing enumeration cap")->capture_default_str();
  cl_cmd->add_option("--format", format, "json | text")->capture_default_str();

  CLI::App* table_cmd = app.add_subcommand("ladder-table", "det/rank/cl table of the matrices M_n");
  table_cmd->add_option("--max", max_level, "largest n")->capture_default_str();
  table_cmd->add_option("--format", format, "json | text")->capture_default_str();

  CLI::App* hom_cmd = app.add_subcommand("homology-report", "per-level cl and cycle-space verdicts");
  add_family_flags(hom_cmd);
  add_loop_flags(hom_cmd);
  hom_cmd->add_option("--max", max_level, "maximum level")->capture_default_str();
  hom_cmd->add_option("--pairing-cap", pairing_cap, "pairing enumeration cap")->capture_default_str();
  hom_cmd->add_option("--format", format, "json | text")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }

  try {
    pairing_cap = pairing_cap_from_env(pairing_cap);

    if (truncate_cmd->parsed()) {
      check_level_cap(level, level_cap);
      const auto q = graphends::truncate(resolve_family(family_opt), level);
      if (format == "dot")
        std::cout << graphends::to_dot(q);
      else if (format == "json")
        emit(graphends::quotient_to_json(q));
      else
        throw graphends::InvalidArgument("truncate supports --format json|dot");
    } else if (ends_cmd->parsed()) {
      check_level_cap(level, level_cap);
      const auto family = resolve_family(family_opt);
      const auto components = graphends::complement_components(family, level, horizon);
      if (format == "text") {
        std::cout << components.size() << "\n";
        for (const auto& c : components) {
          std::cout << c.id << " " << (c.finite ? "finite" : "infinite") << " frontier=";
          for (std::size_t i = 0; i < c.frontier.size(); ++i)
            std::cout << (i ? "," : "") << c.frontier[i];
          std::cout << "\n";
        }
      } else if (format == "json") {
        emit(graphends::components_to_json(family, level, horizon, components));
      } else {
        throw graphends::InvalidArgument("ends supports --format json|text");
      }
    } else if (trace_cmd->parsed()) {
      check_level_cap(level, level_cap);
      const auto family = resolve_family(family_opt);
      const auto loop = resolve_loop(loop_opt);
      const auto path = graphends::theta_trace(loop, family, level);
      const auto tree = graphends::spanning_tree(graphends::truncate(family, level).graph);
      const auto word = graphends::reduce(graphends::trace_word(path, tree));
      if (format == "text") {
        std::cout << graphends::word_to_json(word).dump() << "\n";
      } else if (format == "json") {
        emit(json{{"family", family.name()},
                  {"loop", loop.name},
                  {"level", level},
                  {"path", graphends::trace_to_json(path)},
                  {"word", graphends::word_to_json(word)}});
      } else {
        throw graphends::InvalidArgument("trace supports --format json|text");
      }
    } else if (psi_cmd->parsed()) {
      check_level_cap(max_level, level_cap);
      const auto family = resolve_family(family_opt);
      const auto fam = graphends::psi_family(resolve_loop(loop_opt), family, max_level);
      emit(graphends::psi_to_json(family, fam));
    } else if (cl_cmd->parsed()) {
      json parsed;
      try {
        parsed = json::parse(word_text);
      } catch (const json::parse_error& e) {
        throw graphends::FormatError(std::string("malformed word: ") + e.what());
      }
      const graphends::Word w = graphends::word_from_json(parsed);
      const auto result = graphends::commutator_length(w, pairing_cap);
      if (format == "text") {
        if (result.in_commutator_subgroup)
          std::cout << "cl = " << result.cl << " (pairings considered: " << result.pairings_considered
                    << ")\n";
        else
          std::cout << "not in the commutator subgroup\n";
      } else if (format == "json") {
        emit(graphends::commlength_to_json(w, result));
      } else {
        throw graphends::InvalidArgument("commlength supports --format json|text");
      }
    } else if (table_cmd->parsed()) {
      if (max_level < 1 || max_level > 24)
        throw graphends::InvalidArgument("ladder-table supports --max in 1..24");
      const json table = graphends::ladder_table_to_json(max_level);
      if (format == "text") {
        std::cout << "n  det  rank  cl\n";
        for (const json& row : table.at("rows"))
          std::cout << row.at("n").get<int>() << "  " << row.at("det").get<long long>() << "  "
                    << row.at("rank").get<int>() << "  " << row.at("cl").get<int>() << "\n";
      } else if (format == "json") {
        emit(table);
      } else {
        throw graphends::InvalidArgument("ladder-table supports --format json|text");
      }
    } else if (hom_cmd->parsed()) {
      check_level_cap(max_level, level_cap);
      const auto family = resolve_family(family_opt);
      const auto report =
          graphends::nonnullhomologous_report(resolve_loop(loop_opt), family, max_level, pairing_cap);
      if (format == "text")
        std::cout << graphends::homology_report_to_text(report);
      else if (format == "json")
        emit(graphends::homology_report_to_json(report));
      else
        throw graphends::InvalidArgument("homology-report supports --format json|text");
    }
    return 0;
  } catch (const graphends::CapExceeded& e) {
    std::cerr << json{{"error", {{"type", "cap_exceeded"}, {"message", e.what()}}}}.dump() << "\n";
    return 4;
  } catch (const graphends::UnknownName& e) {
    std::cerr << json{{"error", {{"type", "unknown_name"}, {"message", e.what()}}}}.dump() << "\n";
    return 3;
  } catch (const graphends::FormatError& e) {
    std::cerr << json{{"error", {{"type", "format"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const graphends::InvalidArgument& e) {
    std::cerr << json{{"error", {{"type", "invalid_argument"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  }
}
