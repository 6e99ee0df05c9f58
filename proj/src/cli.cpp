#include "tlfe/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "tlfe/baseline.hpp"
#include "tlfe/bench.hpp"
#include "tlfe/commit.hpp"
#include "tlfe/planner.hpp"
#include "tlfe/render.hpp"

namespace tlfe {

namespace {

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* v = std::getenv("TLFE_LOG");
  if (!v) return LogLevel::Info;
  std::string s(v);
  if (s == "quiet" || s == "0") return LogLevel::Quiet;
  if (s == "debug" || s == "2") return LogLevel::Debug;
  return LogLevel::Info;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

template <typename T>
std::vector<T> parse_list(const std::string& csv, auto convert) {
  std::vector<T> out;
  std::stringstream in(csv);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(convert(item));
  }
  return out;
}

struct TaskOptions {
  std::string formula;
  std::string dfa_path;
  std::string alphabet;

  void attach(CLI::App* cmd, bool with_alphabet) {
    auto* f = cmd->add_option("--formula", formula, "scLTL formula");
    auto* d = cmd->add_option("--dfa", dfa_path, "automaton JSON written by 'compile --out'");
    f->excludes(d);
    if (with_alphabet) cmd->add_option("--alphabet", alphabet, "comma separated observations");
  }

  TotalDfa load(const std::optional<ObservationSet>& fallback_alphabet, const std::string& default_formula = {}) const {
    if (!dfa_path.empty()) return dfa_from_json(read_file(dfa_path));
    std::string text = formula.empty() ? default_formula : formula;
    if (text.empty()) throw InputError("one of --formula or --dfa is required");
    ObservationSet obs;
    if (!alphabet.empty()) {
      obs = ObservationSet::from_csv(alphabet);
    } else if (fallback_alphabet) {
      obs = *fallback_alphabet;
    } else {
      throw InputError("--alphabet is required with --formula");
    }
    return compile_dfa(parse_formula(text, obs), obs);
  }
};

struct PlannerOptions {
  PlannerConfig cfg;
  std::size_t step_cap = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha1", cfg.alpha1, "information gain weight")->capture_default_str();
    cmd->add_option("--alpha2", cfg.alpha2, "task progress weight")->capture_default_str();
    cmd->add_option("--alpha3", cfg.alpha3, "path weight exponent")->capture_default_str();
    cmd->add_option("--h", cfg.h, "sensing radius")->capture_default_str();
    cmd->add_option("--step-cap", step_cap, "abort after this many steps (default 10*|X|*|S|)");
  }

  PlannerConfig resolve() const {
    PlannerConfig out = cfg;
    if (step_cap > 0) out.step_cap = step_cap;
    out.validate();
    return out;
  }
};

struct MapOptions {
  std::string map_path;
  int random_size = 0;
  int blocks = 0;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    auto* m = cmd->add_option("--map", map_path, "map file");
    auto* r = cmd->add_option("--random", random_size, "generate a random map of this size instead");
    m->excludes(r);
    cmd->add_option("--blocks", blocks, "lower-level blocks in a generated map")->capture_default_str();
    cmd->add_option("--seed", seed, "generator seed")->capture_default_str();
  }

  GridMap load() const {
    if (!map_path.empty()) return load_map(read_file(map_path));
    if (random_size > 0) return random_map(random_size, blocks, seed);
    throw InputError("one of --map or --random is required");
  }
};

nlohmann::json cell_json(Cell c) { return nlohmann::json::array({c.col, c.row}); }

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal-logic-aware frontier exploration", "tlfe"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  // compile
  auto* compile = app.add_subcommand("compile", "compile a formula to a total DFA (JSON)");
  std::string compile_formula, compile_alphabet, compile_out;
  std::size_t max_states = CompileOptions{}.max_states;
  compile->add_option("--formula", compile_formula, "scLTL formula")->required();
  compile->add_option("--alphabet", compile_alphabet, "comma separated observations")->required();
  compile->add_option("--out", compile_out, "output file (stdout when omitted)");
  compile->add_option("--max-states", max_states, "state-count safety cap")->capture_default_str();

  // commits
  auto* commits = app.add_subcommand("commits", "list commit states with witness words");
  TaskOptions commit_task;
  commit_task.attach(commits, true);

  // run / render share options
  auto* run = app.add_subcommand("run", "simulate one exploration episode");
  auto* render = app.add_subcommand("render", "simulate one episode and render it");
  struct EpisodeOptions {
    TaskOptions task;
    MapOptions map;
    PlannerOptions planner;
    std::string method = "ours";
    std::string trace_path;
    std::string dump_product_path;
  };
  EpisodeOptions run_opts, render_opts;
  for (auto [cmd, opts] : {std::pair{run, &run_opts}, std::pair{render, &render_opts}}) {
    opts->task.attach(cmd, false);
    opts->map.attach(cmd);
    opts->planner.attach(cmd);
    cmd->add_option("--method", opts->method, "ours or baseline")
        ->check(CLI::IsMember({"ours", "baseline"}))
        ->capture_default_str();
  }
  run->add_option("--trace", run_opts.trace_path, "write the per-step JSON-lines trace ('-' for stdout)");
  run->add_option("--dump-product", run_opts.dump_product_path, "write product sizes per step (JSON lines)");
  std::string render_format = "ascii", render_steps, render_out;
  render->add_option("--format", render_format, "ascii or svg")->capture_default_str();
  render->add_option("--steps", render_steps, "comma separated steps, or 'all' (ascii only)");
  render->add_option("--out", render_out, "output file (stdout when omitted)");

  // bench
  auto* bench = app.add_subcommand("bench", "Monte Carlo comparison on generated maps");
  BenchConfig bench_cfg;
  PlannerOptions bench_planner;
  std::string bench_blocks = "0,5", bench_methods = "ours,baseline", bench_out;
  bool bench_timing = false;
  bench->add_option("--size", bench_cfg.size, "grid size")->capture_default_str();
  bench->add_option("--blocks", bench_blocks, "comma separated block counts")->capture_default_str();
  bench->add_option("--maps", bench_cfg.n_maps, "maps per block count")->capture_default_str();
  bench->add_option("--seed", bench_cfg.base_seed, "base seed")->capture_default_str();
  bench->add_option("--formula", bench_cfg.formula, "formula over l, p, s")->capture_default_str();
  bench->add_option("--methods", bench_methods, "comma separated methods")->capture_default_str();
  bench->add_option("--jobs", bench_cfg.jobs, "worker threads")->capture_default_str();
  bench->add_option("--out", bench_out, "JSON-lines results file");
  bench->add_flag("--timing", bench_timing, "include wall-clock milliseconds in the results file");
  bench_planner.attach(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const LogLevel level = log_level();
  try {
    if (compile->parsed()) {
      ObservationSet obs = ObservationSet::from_csv(compile_alphabet);
      TotalDfa dfa = compile_dfa(parse_formula(compile_formula, obs), obs, {max_states});
      write_output(compile_out, dfa_to_json(dfa) + "\n", out);
      if (level != LogLevel::Quiet && !compile_out.empty()) {
        err << "wrote " << dfa.state_count() << "-state automaton to " << compile_out << "\n";
      }
      return kExitOk;
    }

    if (commits->parsed()) {
      TotalDfa dfa = commit_task.load(std::nullopt);
      out << commit_report_to_json(dfa, commit_states(dfa)) << "\n";
      return kExitOk;
    }

    if (run->parsed() || render->parsed()) {
      const EpisodeOptions& opts = run->parsed() ? run_opts : render_opts;
      const GridMap map = opts.map.load();
      const TotalDfa dfa = opts.task.load(map.alphabet(), kRescueFormula);
      const PlannerConfig cfg = [&] {
        PlannerConfig c = opts.planner.resolve();
        c.record_product = !opts.dump_product_path.empty();
        return c;
      }();
      const Method method = parse_method(opts.method);
      const CommitReport report = commit_states(dfa);
      const EpisodeResult result =
          method == Method::Ours ? run_episode(map, dfa, report, cfg) : run_baseline(map, dfa, cfg);
      if (level == LogLevel::Debug) {
        for (const auto& it : result.diagnostics) {
          err << "known=" << it.known << " frontiers=" << it.frontier_count << " v_max=" << it.v_max;
          if (it.chosen) err << " chosen=(" << it.chosen->col << "," << it.chosen->row << ")";
          err << "\n";
        }
      }

      if (run->parsed()) {
        if (!opts.trace_path.empty()) write_output(opts.trace_path, trace_to_jsonl(result), out);
        if (!opts.dump_product_path.empty()) write_output(opts.dump_product_path, product_sizes_to_jsonl(result), out);
        nlohmann::ordered_json j;
        j["method"] = method_name(method);
        j["verdict"] = result.satisfied() ? "satisfied" : "unsatisfiable";
        if (!result.reason.empty()) j["reason"] = result.reason;
        j["steps"] = result.steps;
        j["known"] = result.final_known.count();
        auto traj = nlohmann::json::array();
        for (Cell c : result.trajectory) traj.push_back(cell_json(c));
        j["trajectory"] = std::move(traj);
        if (opts.trace_path != "-" && opts.dump_product_path != "-") out << j.dump() << "\n";
      } else {
        const RenderFormat format = parse_render_format(render_format);
        const Timeline timeline{result.revealed, result.trajectory};
        std::vector<std::size_t> steps;
        if (render_steps == "all") {
          for (std::size_t t = 0; t <= timeline.last_step(); ++t) steps.push_back(t);
        } else if (!render_steps.empty()) {
          steps = parse_list<std::size_t>(render_steps, [](const std::string& s) {
            try {
              return static_cast<std::size_t>(std::stoul(s));
            } catch (const std::exception&) {
              throw InputError("invalid step '" + s + "'");
            }
          });
        }
        write_output(render_out, render_trajectory(map, timeline, format, steps), out);
      }
      if (level != LogLevel::Quiet && !result.satisfied()) {
        err << "task cannot be satisfied: " << result.reason << "\n";
      }
      return result.satisfied() ? kExitOk : kExitUnsatisfiable;
    }

    if (bench->parsed()) {
      bench_cfg.cfg = bench_planner.resolve();
      bench_cfg.methods = parse_list<Method>(bench_methods, [](const std::string& s) { return parse_method(s); });
      const auto block_counts = parse_list<int>(bench_blocks, [](const std::string& s) {
        try {
          return std::stoi(s);
        } catch (const std::exception&) {
          throw InputError("invalid block count '" + s + "'");
        }
      });
      if (block_counts.empty()) throw InputError("--blocks is empty");
      BenchResult all;
      for (int n : block_counts) {
        BenchConfig c = bench_cfg;
        c.n_blocks = n;
        BenchResult r = run_bench(c);
        all.records.insert(all.records.end(), r.records.begin(), r.records.end());
      }
      all.summary = summarize(all.records);
      if (!bench_out.empty()) write_output(bench_out, results_to_jsonl(all, bench_timing), out);
      out << summary_table(all.summary);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tlfe
