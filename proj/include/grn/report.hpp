#ifndef GRN_REPORT_HPP
#define GRN_REPORT_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "grn/diagnostic.hpp"
#include "grn/mdd.hpp"
#include "grn/network.hpp"

namespace grn::cli {

using mdd::BigInt;
using Json = nlohmann::ordered_json;

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int property_fails = 1;
inline constexpr int usage = 2;  // usage, I/O and parse errors
inline constexpr int semantic = 3;
inline constexpr int resource = 4;  // limits, timeouts, engine discrepancies
}  // namespace exit_code

struct ModelCounts {
  std::size_t genes = 0;
  std::size_t edges = 0;
  std::size_t rules = 0;
  std::size_t places = 0;
  std::size_t transitions = 0;
  friend bool operator==(const ModelCounts&, const ModelCounts&) = default;
};

struct EngineStats {
  std::size_t peak_nodes = 0;
  std::size_t fixpoint_rounds = 0;
  std::size_t cache_lookups = 0;
  std::size_t cache_hits = 0;
  std::size_t collections = 0;
  friend bool operator==(const EngineStats&, const EngineStats&) = default;
};

/// Structured result of one command. Text and JSON are both rendered from
/// this, so they always carry the same verdicts and counts.
struct Report {
  std::string command;
  std::string model;
  std::string engine;
  std::vector<std::string> genes;
  std::vector<Diagnostic> diagnostics;
  std::optional<std::string> query;
  std::optional<bool> holds;
  std::optional<BigInt> reachable_count;
  std::optional<BigInt> satisfying_count;
  std::optional<BigInt> stable_count;
  std::vector<State> stable_states;
  std::optional<std::vector<State>> evidence;
  std::optional<ModelCounts> counts;
  std::optional<EngineStats> stats;
  std::optional<std::string> error;
  double wall_ms = 0;
  int exit_code = 0;

  friend bool operator==(const Report&, const Report&) = default;
};

namespace detail {

inline Json state_json(const State& s, const std::vector<std::string>& genes) {
  Json obj = Json::object();
  for (std::size_t g = 0; g < s.size(); ++g) {
    obj[g < genes.size() ? genes[g] : "#" + std::to_string(g)] = s[g];
  }
  return obj;
}

inline State state_from_json(const Json& j) {
  State s;
  for (const auto& [name, level] : j.items()) s.levels.push_back(level.get<int>());
  return s;
}

inline Json span_json(const SourceSpan& sp) {
  return {{"line", sp.line}, {"column", sp.column}, {"length", sp.length}};
}

}  // namespace detail

inline Json to_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["model"] = r.model;
  if (!r.engine.empty()) j["engine"] = r.engine;
  j["genes"] = r.genes;
  Json diags = Json::array();
  for (const auto& d : r.diagnostics) {
    diags.push_back({{"severity", d.severity == Severity::error ? "error" : "warning"},
                     {"code", d.code},
                     {"message", d.message},
                     {"span", detail::span_json(d.span)}});
  }
  j["diagnostics"] = std::move(diags);
  if (r.query) j["query"] = *r.query;
  if (r.holds) j["holds"] = *r.holds;
  // counts are exact decimal strings; they routinely exceed 64 bits
  if (r.reachable_count) j["reachable_count"] = r.reachable_count->str();
  if (r.satisfying_count) j["satisfying_reachable_count"] = r.satisfying_count->str();
  if (r.stable_count) {
    j["stable_count"] = r.stable_count->str();
    Json states = Json::array();
    for (const auto& s : r.stable_states) states.push_back(detail::state_json(s, r.genes));
    j["stable_states"] = std::move(states);
  }
  if (r.evidence) {
    Json path = Json::array();
    for (const auto& s : *r.evidence) path.push_back(detail::state_json(s, r.genes));
    j["evidence"] = std::move(path);
  }
  if (r.counts) {
    j["network"] = {{"genes", r.counts->genes},
                    {"edges", r.counts->edges},
                    {"rules", r.counts->rules},
                    {"places", r.counts->places},
                    {"transitions", r.counts->transitions}};
  }
  if (r.stats) {
    j["stats"] = {{"peak_nodes", r.stats->peak_nodes},
                  {"fixpoint_rounds", r.stats->fixpoint_rounds},
                  {"cache_lookups", r.stats->cache_lookups},
                  {"cache_hits", r.stats->cache_hits},
                  {"collections", r.stats->collections}};
  }
  if (r.error) j["error"] = *r.error;
  j["wall_ms"] = r.wall_ms;
  j["exit_code"] = r.exit_code;
  return j;
}

inline Report report_from_json(const Json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.model = j.at("model").get<std::string>();
  if (j.contains("engine")) r.engine = j["engine"].get<std::string>();
  r.genes = j.at("genes").get<std::vector<std::string>>();
  for (const auto& d : j.at("diagnostics")) {
    const auto& sp = d.at("span");
    r.diagnostics.push_back({d.at("severity") == "error" ? Severity::error : Severity::warning,
                             d.at("code").get<std::string>(), d.at("message").get<std::string>(),
                             SourceSpan{sp.at("line").get<int>(), sp.at("column").get<int>(),
                                        sp.at("length").get<int>()}});
  }
  if (j.contains("query")) r.query = j["query"].get<std::string>();
  if (j.contains("holds")) r.holds = j["holds"].get<bool>();
  if (j.contains("reachable_count")) r.reachable_count = BigInt(j["reachable_count"].get<std::string>());
  if (j.contains("satisfying_reachable_count")) {
    r.satisfying_count = BigInt(j["satisfying_reachable_count"].get<std::string>());
  }
  if (j.contains("stable_count")) {
    r.stable_count = BigInt(j["stable_count"].get<std::string>());
    for (const auto& s : j.at("stable_states")) r.stable_states.push_back(detail::state_from_json(s));
  }
  if (j.contains("evidence")) {
    r.evidence.emplace();
    for (const auto& s : j["evidence"]) r.evidence->push_back(detail::state_from_json(s));
  }
  if (j.contains("network")) {
    const auto& n = j["network"];
    r.counts = ModelCounts{n.at("genes"), n.at("edges"), n.at("rules"), n.at("places"),
                           n.at("transitions")};
  }
  if (j.contains("stats")) {
    const auto& s = j["stats"];
    r.stats = EngineStats{s.at("peak_nodes"), s.at("fixpoint_rounds"), s.at("cache_lookups"),
                          s.at("cache_hits"), s.at("collections")};
  }
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  r.wall_ms = j.at("wall_ms").get<double>();
  r.exit_code = j.at("exit_code").get<int>();
  return r;
}

inline std::string describe(const State& s, const std::vector<std::string>& genes) {
  std::string out;
  for (std::size_t g = 0; g < s.size(); ++g) {
    if (g) out += ' ';
    out += (g < genes.size() ? genes[g] : "#" + std::to_string(g)) + '=' + std::to_string(s[g]);
  }
  return out;
}

/// Human-readable rendering. Diagnostics go to `err` except for `validate`,
/// where they are the result.
inline void render_text(const Report& r, std::ostream& out, std::ostream& err) {
  auto& diag_stream = r.command == "validate" ? out : err;
  for (const auto& d : r.diagnostics) diag_stream << format(d, r.model) << '\n';
  if (r.command == "validate" && !r.error) {
    const auto errors = count_severity(r.diagnostics, Severity::error);
    const auto warnings = count_severity(r.diagnostics, Severity::warning);
    out << errors << (errors == 1 ? " error, " : " errors, ") << warnings
        << (warnings == 1 ? " warning" : " warnings") << '\n';
  }
  if (r.error) err << "error: " << *r.error << '\n';

  if (r.holds) {
    out << (r.query ? *r.query : std::string("query")) << ": "
        << (*r.holds ? "holds" : "does not hold") << '\n';
    if (r.reachable_count) out << "reachable states: " << *r.reachable_count << '\n';
    if (r.satisfying_count) out << "satisfying reachable states: " << *r.satisfying_count << '\n';
  } else if (r.reachable_count && r.command == "check") {
    out << *r.reachable_count << '\n';
  }
  if (r.stable_count) {
    out << *r.stable_count << (*r.stable_count == 1 ? " stable state" : " stable states");
    for (std::size_t i = 0; i < r.stable_states.size(); ++i) {
      out << (i == 0 ? ": " : "; ") << describe(r.stable_states[i], r.genes);
    }
    if (*r.stable_count > r.stable_states.size()) {
      out << "; ... (" << (*r.stable_count - r.stable_states.size()) << " more)";
    }
    out << '\n';
  }
  if (r.evidence) {
    const auto steps = r.evidence->empty() ? 0 : r.evidence->size() - 1;
    out << (r.holds && *r.holds ? "witness" : "counterexample") << " (" << steps
        << (steps == 1 ? " step" : " steps") << "):\n";
    for (const auto& s : *r.evidence) out << "  " << describe(s, r.genes) << '\n';
  }
  if (r.counts && r.command == "stats") {
    out << "genes: " << r.counts->genes << '\n'
        << "edges: " << r.counts->edges << '\n'
        << "rules: " << r.counts->rules << '\n'
        << "places: " << r.counts->places << '\n'
        << "transitions: " << r.counts->transitions << '\n';
    if (r.reachable_count && !r.holds) out << "reachable states: " << *r.reachable_count << '\n';
  }
  if (r.stats && (r.command == "stats" || r.exit_code == exit_code::resource)) {
    out << "peak MDD nodes: " << r.stats->peak_nodes << '\n'
        << "fixpoint rounds: " << r.stats->fixpoint_rounds << '\n'
        << "cache hits: " << r.stats->cache_hits << '/' << r.stats->cache_lookups << '\n'
        << "garbage collections: " << r.stats->collections << '\n';
    std::ostringstream ms;
    ms.precision(3);
    ms << std::fixed << r.wall_ms;
    out << "wall time: " << ms.str() << " ms\n";
  }
}

}  // namespace grn::cli

#endif
