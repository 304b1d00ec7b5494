#ifndef GRN_CLI_HPP
#define GRN_CLI_HPP

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "grn/checker.hpp"
#include "grn/dsl/lower.hpp"
#include "grn/dsl/printer.hpp"
#include "grn/explicit.hpp"
#include "grn/petri.hpp"
#include "grn/report.hpp"
#include "grn/symbolic.hpp"

namespace grn::cli {

enum class EngineChoice { symbolic, explicit_state, both };
enum class OutputFormat { text, json };

struct RunConfig {
  std::string command;
  std::string model_path;
  std::string query;
  std::string query_file;
  std::string where;
  std::string compile_format = "json";
  std::string output_path;
  EngineChoice engine = EngineChoice::symbolic;
  VariableOrder order = VariableOrder::declaration;
  OutputFormat format = OutputFormat::text;
  std::size_t max_nodes = std::size_t{1} << 24;
  std::size_t max_states = oracle::default_state_cap;
  std::optional<double> timeout_seconds;
  bool witness = false;
};

namespace detail {

using Clock = std::chrono::steady_clock;

struct Failure {
  int code;
  std::string message;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{exit_code::usage, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string engine_name(EngineChoice e) {
  switch (e) {
    case EngineChoice::symbolic: return "symbolic";
    case EngineChoice::explicit_state: return "explicit";
    case EngineChoice::both: return "both";
  }
  return {};
}

class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg), start_(Clock::now()) {
    report_.command = cfg.command;
    report_.model = cfg.model_path;
  }

  Report run() {
    try {
      if (cfg_.command == "validate") {
        validate();
      } else if (cfg_.command == "compile") {
        compile();
      } else if (cfg_.command == "check") {
        check();
      } else if (cfg_.command == "stable") {
        stable();
      } else if (cfg_.command == "stats") {
        stats();
      }
    } catch (const Failure& f) {
      report_.error = f.message;
      report_.exit_code = f.code;
    } catch (const mdd::ResourceError& e) {
      report_.error = e.what();
      report_.exit_code = exit_code::resource;
      capture_stats();
    } catch (const oracle::StateCapExceeded& e) {
      report_.error = e.what();
      report_.exit_code = exit_code::resource;
    }
    report_.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return std::move(report_);
  }

  std::string artifact;  // compile output when no -o is given

 private:
  // Reads, parses and lowers the model. Parse errors exit 2, semantic 3.
  const Network& load() {
    const std::string text = read_file(cfg_.model_path);
    auto parsed = dsl::parse_network(text);
    if (!parsed) {
      report_.diagnostics = std::move(parsed.diagnostics);
      throw Failure{exit_code::usage, "the model has syntax errors"};
    }
    auto lowered = dsl::lower(*parsed.ast);
    report_.diagnostics = std::move(lowered.diagnostics);
    if (!lowered) throw Failure{exit_code::semantic, "the model has semantic errors"};
    network_ = std::move(lowered.value);
    for (const auto& g : network_->genes) report_.genes.push_back(g.name);
    return *network_;
  }

  SymbolicModel& model() {
    if (!model_) {
      SymbolicOptions opts;
      opts.order = cfg_.order;
      opts.limits.max_nodes = cfg_.max_nodes;
      if (cfg_.timeout_seconds) {
        opts.limits.deadline =
            start_ + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(*cfg_.timeout_seconds));
      }
      model_.emplace(*network_, opts);
    }
    return *model_;
  }

  void capture_stats() {
    if (!model_) return;
    const auto s = model_->engine().stats();
    report_.stats = EngineStats{s.peak_nodes, s.fixpoint_rounds, s.cache_lookups, s.cache_hits,
                                s.collections};
  }

  void validate() {
    const std::string text = read_file(cfg_.model_path);
    auto parsed = dsl::parse_network(text);
    if (!parsed) {
      report_.diagnostics = std::move(parsed.diagnostics);
      report_.exit_code = exit_code::usage;
      return;
    }
    auto lowered = dsl::lower(*parsed.ast);
    report_.diagnostics = std::move(lowered.diagnostics);
    report_.exit_code = lowered ? exit_code::success : exit_code::semantic;
  }

  void compile() {
    const auto compiled = pn::compile(load());
    if (cfg_.compile_format == "dot") {
      artifact = pn::to_dot(compiled.net);
    } else {
      artifact = pn::to_json(compiled.net).dump(2) + "\n";
    }
    report_.counts = counts(compiled);
    if (!cfg_.output_path.empty()) {
      std::ofstream out(cfg_.output_path, std::ios::binary);
      if (!out) throw Failure{exit_code::usage, "cannot write '" + cfg_.output_path + "'"};
      out << artifact;
      artifact.clear();
    }
  }

  ModelCounts counts(const pn::CompiledNet& compiled) const {
    return {network_->genes.size(), network_->edges.size(), network_->rules.size(),
            compiled.net.places.size(), compiled.net.transitions.size()};
  }

  Query load_query() {
    std::string text = cfg_.query;
    if (!cfg_.query_file.empty()) text = read_file(cfg_.query_file);
    auto parsed = dsl::parse_query(text);
    if (!parsed) {
      report_.diagnostics.insert(report_.diagnostics.end(), parsed.diagnostics.begin(),
                                 parsed.diagnostics.end());
      throw Failure{exit_code::usage, "the query has syntax errors"};
    }
    report_.query = dsl::pretty_print(*parsed.ast);
    auto lowered = dsl::lower(*parsed.ast, *network_);
    if (!lowered) {
      report_.diagnostics.insert(report_.diagnostics.end(), lowered.diagnostics.begin(),
                                 lowered.diagnostics.end());
      throw Failure{exit_code::semantic, "the query refers to unknown genes or levels"};
    }
    return std::move(*lowered.value);
  }

  void check() {
    load();
    const Query q = load_query();
    report_.engine = engine_name(cfg_.engine);
    const bool symbolic = cfg_.engine != EngineChoice::explicit_state;
    const bool explicit_state = cfg_.engine != EngineChoice::symbolic;

    switch (q.kind) {
      case Query::Kind::check: {
        std::optional<Verdict> sym;
        std::optional<Verdict> exp;
        if (explicit_state) exp = oracle::explicit_check(*network_, *q.formula, cfg_.max_states);
        if (symbolic) {
          sym = grn::check(model(), *q.formula);
          capture_stats();
        }
        if (sym && exp) compare_verdicts(*sym, *exp);
        const Verdict& v = sym ? *sym : *exp;
        report_.holds = v.holds;
        report_.reachable_count = v.reachable_count;
        report_.satisfying_count = v.satisfying_reachable_count;
        if (cfg_.witness) report_.evidence = v.evidence;
        report_.exit_code = v.holds ? exit_code::success : exit_code::property_fails;
        break;
      }
      case Query::Kind::count_reachable: {
        std::optional<BigInt> sym;
        std::optional<BigInt> exp;
        if (explicit_state) exp = BigInt(oracle::explore(*network_, cfg_.max_states).size());
        if (symbolic) {
          sym = count_reachable(model());
          capture_stats();
        }
        if (sym && exp && *sym != *exp) {
          throw Failure{exit_code::resource, "engines disagree on the reachable count: symbolic " +
                                                 sym->str() + ", explicit " + exp->str()};
        }
        report_.reachable_count = sym ? *sym : *exp;
        break;
      }
      case Query::Kind::stable:
        run_stable(q.formula, symbolic, explicit_state);
        break;
    }
  }

  void compare_verdicts(const Verdict& sym, const Verdict& exp) {
    std::string diff;
    if (sym.holds != exp.holds) {
      diff += std::string(" verdict: symbolic ") + (sym.holds ? "holds" : "fails") +
              ", explicit " + (exp.holds ? "holds" : "fails") + ";";
    }
    if (sym.reachable_count != exp.reachable_count) {
      diff += " reachable: symbolic " + sym.reachable_count.str() + ", explicit " +
              exp.reachable_count.str() + ";";
    }
    if (sym.satisfying_reachable_count != exp.satisfying_reachable_count) {
      diff += " satisfying: symbolic " + sym.satisfying_reachable_count.str() + ", explicit " +
              exp.satisfying_reachable_count.str() + ";";
    }
    if (sym.evidence.has_value() != exp.evidence.has_value() ||
        (sym.evidence && sym.evidence->size() != exp.evidence->size())) {
      diff += " evidence length differs;";
    }
    if (!diff.empty()) throw Failure{exit_code::resource, "engines disagree:" + diff};
  }

  void run_stable(const std::optional<Formula>& where, bool symbolic, bool explicit_state) {
    std::optional<StableReport> sym;
    std::optional<StableReport> exp;
    if (explicit_state) exp = oracle::explicit_stable(*network_, where, cfg_.max_states);
    if (symbolic) {
      sym = stable_states(model(), where);
      capture_stats();
    }
    if (sym && exp && (sym->count != exp->count || sym->states != exp->states)) {
      throw Failure{exit_code::resource, "engines disagree on stable states: symbolic " +
                                             sym->count.str() + ", explicit " + exp->count.str()};
    }
    const StableReport& r = sym ? *sym : *exp;
    report_.stable_count = r.count;
    report_.stable_states = r.states;
  }

  void stable() {
    load();
    std::optional<Formula> where;
    if (!cfg_.where.empty()) {
      auto parsed = dsl::parse_formula(cfg_.where);
      if (!parsed) {
        report_.diagnostics = std::move(parsed.diagnostics);
        throw Failure{exit_code::usage, "the --where formula has syntax errors"};
      }
      auto lowered = dsl::lower(*parsed.ast, *network_);
      if (!lowered) {
        report_.diagnostics = std::move(lowered.diagnostics);
        throw Failure{exit_code::semantic, "the --where formula refers to unknown genes or levels"};
      }
      where = std::move(lowered.value);
      report_.query = "stable where " + dsl::pretty_print(*parsed.ast);
    }
    report_.engine = "symbolic";
    run_stable(where, true, false);
  }

  void stats() {
    load();
    report_.engine = "symbolic";
    report_.counts = counts(model().compiled());
    report_.reachable_count = count_reachable(model());
    capture_stats();
  }

  const RunConfig& cfg_;
  Clock::time_point start_;
  Report report_;
  std::optional<Network> network_;
  std::optional<SymbolicModel> model_;
};

}  // namespace detail

/// Executes one command and returns its report; `artifact` receives the
/// compiled net when `compile` writes to standard output.
inline Report execute(const RunConfig& cfg, std::string* artifact = nullptr) {
  detail::Runner runner(cfg);
  Report r = runner.run();
  if (artifact) *artifact = std::move(runner.artifact);
  return r;
}

/// Full command-line entry point. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checker for discrete gene regulatory networks", "grn"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool json = false;

  const std::map<std::string, EngineChoice> engines{{"symbolic", EngineChoice::symbolic},
                                                    {"explicit", EngineChoice::explicit_state},
                                                    {"both", EngineChoice::both}};
  const std::map<std::string, VariableOrder> orders{{"decl", VariableOrder::declaration},
                                                    {"reverse", VariableOrder::reverse}};

  const auto add_engine_options = [&](CLI::App* sub) {
    sub->add_option("--order", cfg.order, "Variable order")
        ->transform(CLI::CheckedTransformer(orders, CLI::ignore_case));
    sub->add_option("--max-nodes", cfg.max_nodes, "Decision-diagram node limit")
        ->check(CLI::PositiveNumber);
    sub->add_option("--timeout", cfg.timeout_seconds, "Timeout in seconds")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", json, "Machine-readable output");
  };

  auto* validate = app.add_subcommand("validate", "Report diagnostics for a model");
  validate->add_option("file", cfg.model_path)->required();
  validate->add_flag("--json", json, "Machine-readable output");

  auto* compile = app.add_subcommand("compile", "Export the compiled Petri net");
  compile->add_option("file", cfg.model_path)->required();
  compile->add_option("--format", cfg.compile_format)
      ->check(CLI::IsMember({"dot", "json"}))
      ->required();
  compile->add_option("-o,--output", cfg.output_path, "Output file");

  auto* check = app.add_subcommand("check", "Evaluate a query");
  check->add_option("file", cfg.model_path)->required();
  auto* query_opt = check->add_option("query", cfg.query, "Query text");
  auto* query_file = check->add_option("--query-file", cfg.query_file, "Read the query from a file");
  query_opt->excludes(query_file);
  check->add_flag("--witness", cfg.witness, "Print the witness or counterexample path");
  check->add_option("--engine", cfg.engine, "symbolic, explicit or both")
      ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case));
  check->add_option("--max-states", cfg.max_states, "Explicit-state cap")
      ->check(CLI::PositiveNumber);
  add_engine_options(check);

  auto* stable = app.add_subcommand("stable", "List stable states");
  stable->add_option("file", cfg.model_path)->required();
  stable->add_option("--where", cfg.where, "Filter formula");
  add_engine_options(stable);

  auto* stats = app.add_subcommand("stats", "Model and state-space statistics");
  stats->add_option("file", cfg.model_path)->required();
  add_engine_options(stats);

  std::vector<const char*> argv{"grn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::success;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  if (check->parsed() && cfg.query.empty() && cfg.query_file.empty()) {
    err << "error: check needs a query or --query-file\n";
    return exit_code::usage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = json ? OutputFormat::json : OutputFormat::text;

  std::string artifact;
  const Report report = execute(cfg, &artifact);
  out << artifact;
  if (cfg.format == OutputFormat::json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    render_text(report, out, err);
  }
  return report.exit_code;
}

}  // namespace grn::cli

#endif
