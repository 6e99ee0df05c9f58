#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tlfe/baseline.hpp"
#include "tlfe/bench.hpp"
#include "tlfe/error.hpp"
#include "tlfe/planner.hpp"
#include "tlfe/render.hpp"

namespace py = pybind11;
using namespace tlfe;

namespace {

using Word = std::vector<std::vector<std::string>>;

std::vector<Letter> to_letters(const ObservationSet& o, const Word& word) {
  std::vector<Letter> out;
  out.reserve(word.size());
  for (const auto& names : word) out.push_back(o.letter(names));
  return out;
}

Word from_letters(const ObservationSet& o, std::span<const Letter> word) {
  Word out;
  for (Letter l : word) out.push_back(o.letter_names(l));
  return out;
}

py::tuple cell_tuple(Cell c) { return py::make_tuple(c.col, c.row); }

PlannerConfig make_config(double alpha1, double alpha2, double alpha3, int h, std::optional<std::size_t> step_cap) {
  PlannerConfig cfg;
  cfg.alpha1 = alpha1;
  cfg.alpha2 = alpha2;
  cfg.alpha3 = alpha3;
  cfg.h = h;
  cfg.step_cap = step_cap;
  return cfg;
}

// An episode keeps its map alive so that rendering stays valid.
struct Episode {
  std::shared_ptr<const GridMap> map;
  std::shared_ptr<const TotalDfa> dfa;
  EpisodeResult result;
  std::string method;
};

}  // namespace

PYBIND11_MODULE(tlfe, m) {
  m.doc() = "Temporal-logic-aware frontier exploration on labeled grids";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<CapacityError> capacity_error(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      py::set_error(input_error, e.what());
    } catch (const CapacityError& e) {
      py::set_error(capacity_error, e.what());
    }
  });

  m.attr("RESCUE_FORMULA") = kRescueFormula;

  m.def(
      "parse",
      [](const std::string& formula, const std::vector<std::string>& alphabet) {
        return parse_formula(formula, ObservationSet(alphabet)).str();
      },
      py::arg("formula"), py::arg("alphabet"), "Parse a formula and return its fully parenthesised text.");

  m.def(
      "progress",
      [](const std::string& formula, const std::vector<std::string>& alphabet, const std::vector<std::string>& letter) {
        ObservationSet o(alphabet);
        return progress(parse_formula(formula, o), o.letter(letter)).str();
      },
      py::arg("formula"), py::arg("alphabet"), py::arg("letter"));

  m.def(
      "is_good_prefix",
      [](const std::string& formula, const std::vector<std::string>& alphabet, const Word& word) {
        ObservationSet o(alphabet);
        return is_good_prefix(parse_formula(formula, o), to_letters(o, word));
      },
      py::arg("formula"), py::arg("alphabet"), py::arg("word"));

  py::class_<TotalDfa, std::shared_ptr<TotalDfa>>(m, "Dfa")
      .def_property_readonly("alphabet", [](const TotalDfa& d) { return d.alphabet().names(); })
      .def_property_readonly("state_count", &TotalDfa::state_count)
      .def_property_readonly("initial", &TotalDfa::initial)
      .def_property_readonly("trash", &TotalDfa::trash)
      .def_property_readonly("accepting", &TotalDfa::accepting_states)
      .def_property_readonly("live_state_count", &TotalDfa::live_state_count)
      .def(
          "next",
          [](const TotalDfa& d, StateId s, const std::vector<std::string>& letter) {
            if (s >= d.state_count()) throw InputError("state out of range");
            return d.next(s, d.alphabet().letter(letter));
          },
          py::arg("state"), py::arg("letter"))
      .def(
          "run",
          [](const TotalDfa& d, const Word& word, std::optional<StateId> start) {
            return d.run(start.value_or(d.initial()), to_letters(d.alphabet(), word));
          },
          py::arg("word"), py::arg("start") = py::none())
      .def("accepts", [](const TotalDfa& d, const Word& word) { return d.accepts(to_letters(d.alphabet(), word)); })
      .def("to_json", [](const TotalDfa& d) { return dfa_to_json(d); })
      .def_static("from_json", [](const std::string& text) { return std::make_shared<TotalDfa>(dfa_from_json(text)); })
      .def("__repr__", [](const TotalDfa& d) {
        return "<Dfa states=" + std::to_string(d.state_count()) + " initial=" + std::to_string(d.initial()) + ">";
      });

  m.def(
      "compile",
      [](const std::string& formula, const std::vector<std::string>& alphabet, std::size_t max_states) {
        ObservationSet o(alphabet);
        return std::make_shared<TotalDfa>(compile_dfa(parse_formula(formula, o), o, {max_states}));
      },
      py::arg("formula"), py::arg("alphabet"), py::arg("max_states") = CompileOptions{}.max_states);

  m.def(
      "commit_states",
      [](const TotalDfa& d) {
        CommitReport r = commit_states(d);
        py::dict out;
        for (StateId s : r.commit_states) out[py::int_(s)] = from_letters(d.alphabet(), r.witnesses.at(s));
        return out;
      },
      py::arg("dfa"), "Commit states mapped to a shortest witness word.");

  m.def(
      "verify_witness",
      [](const TotalDfa& d, StateId s, const Word& word) { return verify_witness(d, s, to_letters(d.alphabet(), word)); },
      py::arg("dfa"), py::arg("state"), py::arg("word"));

  py::class_<GridMap, std::shared_ptr<GridMap>>(m, "GridMap")
      .def_property_readonly("width", &GridMap::width)
      .def_property_readonly("height", &GridMap::height)
      .def_property_readonly("start", [](const GridMap& g) { return cell_tuple(g.start()); })
      .def_property_readonly("alphabet", [](const GridMap& g) { return g.alphabet().names(); })
      .def(
          "label",
          [](const GridMap& g, int col, int row) -> std::optional<std::string> {
            if (!g.contains({col, row})) throw InputError("cell outside the map");
            const int l = g.label({col, row});
            if (l == GridMap::kUnlabeled) return std::nullopt;
            return g.alphabet().name(static_cast<std::size_t>(l));
          },
          py::arg("col"), py::arg("row"))
      .def("to_text", &GridMap::to_text);

  m.def(
      "load_map", [](const std::string& text) { return std::make_shared<GridMap>(load_map(text)); }, py::arg("text"));
  m.def(
      "load_map_file", [](const std::string& path) { return std::make_shared<GridMap>(load_map_file(path)); },
      py::arg("path"));
  m.def(
      "random_map",
      [](int size, int n_blocks, std::uint64_t seed) {
        return std::make_shared<GridMap>(random_map(size, n_blocks, seed));
      },
      py::arg("size") = 20, py::arg("n_blocks") = 0, py::arg("seed") = 0);

  py::class_<Episode>(m, "Episode")
      .def_property_readonly("method", [](const Episode& e) { return e.method; })
      .def_property_readonly("satisfied", [](const Episode& e) { return e.result.satisfied(); })
      .def_property_readonly("verdict",
                             [](const Episode& e) { return e.result.satisfied() ? "satisfied" : "unsatisfiable"; })
      .def_property_readonly("reason", [](const Episode& e) { return e.result.reason; })
      .def_property_readonly("steps", [](const Episode& e) { return e.result.steps; })
      .def_property_readonly("known", [](const Episode& e) { return e.result.final_known.count(); })
      .def_property_readonly("trajectory",
                             [](const Episode& e) {
                               py::list out;
                               for (Cell c : e.result.trajectory) out.append(cell_tuple(c));
                               return out;
                             })
      .def_property_readonly("actions",
                             [](const Episode& e) {
                               std::vector<std::string> out;
                               for (Action a : e.result.actions) out.emplace_back(action_name(a));
                               return out;
                             })
      .def_property_readonly("word", [](const Episode& e) { return from_letters(e.map->alphabet(), e.result.word); })
      .def("trace_jsonl", [](const Episode& e) { return trace_to_jsonl(e.result); })
      .def(
          "render",
          [](const Episode& e, const std::string& format, std::optional<std::vector<std::size_t>> steps) {
            const Timeline tl{e.result.revealed, e.result.trajectory};
            const std::vector<std::size_t> wanted = steps.value_or(std::vector<std::size_t>{});
            return render_trajectory(*e.map, tl, parse_render_format(format), wanted);
          },
          py::arg("format") = "ascii", py::arg("steps") = py::none());

  m.def(
      "run_episode",
      [](std::shared_ptr<const GridMap> map, std::shared_ptr<const TotalDfa> dfa, const std::string& method,
         double alpha1, double alpha2, double alpha3, int h, std::optional<std::size_t> step_cap) {
        const PlannerConfig cfg = make_config(alpha1, alpha2, alpha3, h, step_cap);
        const Method which = parse_method(method);
        if (!dfa) dfa = std::make_shared<TotalDfa>(compile_dfa(parse_formula(kRescueFormula, map->alphabet()), map->alphabet()));
        Episode e{map, dfa, {}, method_name(which)};
        py::gil_scoped_release release;
        e.result = which == Method::Ours ? run_episode(*map, *dfa, commit_states(*dfa), cfg) : run_baseline(*map, *dfa, cfg);
        return e;
      },
      py::arg("map"), py::arg("dfa") = py::none(), py::arg("method") = "ours", py::arg("alpha1") = 1.0,
      py::arg("alpha2") = 20.0, py::arg("alpha3") = 1.0, py::arg("h") = 3, py::arg("step_cap") = py::none(),
      "Simulate one episode. Without a dfa the rescue task over the map's alphabet is used.");

  m.def(
      "run_bench",
      [](int size, std::vector<int> blocks, int n_maps, std::uint64_t seed, const std::vector<std::string>& methods,
         const std::string& formula, unsigned jobs) {
        std::vector<RunRecord> records;
        for (int n : blocks) {
          BenchConfig cfg;
          cfg.size = size;
          cfg.n_blocks = n;
          cfg.n_maps = n_maps;
          cfg.base_seed = seed;
          cfg.formula = formula;
          cfg.jobs = jobs;
          cfg.methods.clear();
          for (const auto& name : methods) cfg.methods.push_back(parse_method(name));
          BenchResult r;
          {
            py::gil_scoped_release release;
            r = run_bench(cfg);
          }
          records.insert(records.end(), r.records.begin(), r.records.end());
        }
        py::list rows;
        for (const auto& r : records) {
          py::dict d;
          d["map_seed"] = r.map_seed;
          d["n_blocks"] = r.n_blocks;
          d["method"] = method_name(r.method);
          d["satisfied"] = r.satisfied;
          d["steps"] = r.steps;
          rows.append(d);
        }
        py::list summary;
        for (const auto& s : summarize(records)) {
          py::dict d;
          d["n_blocks"] = s.n_blocks;
          d["method"] = method_name(s.method);
          d["runs"] = s.runs;
          d["satisfaction_rate"] = s.satisfaction_rate;
          d["avg_steps"] = s.avg_steps;
          summary.append(d);
        }
        return py::make_tuple(rows, summary);
      },
      py::arg("size") = 20, py::arg("blocks") = std::vector<int>{0, 5}, py::arg("n_maps") = 10, py::arg("seed") = 0,
      py::arg("methods") = std::vector<std::string>{"ours", "baseline"}, py::arg("formula") = kRescueFormula,
      py::arg("jobs") = 1, "Run the generated-map comparison; returns (records, summary).");
}
