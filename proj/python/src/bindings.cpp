#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aonpg/core.hpp"
#include "aonpg/engine.hpp"
#include "aonpg/graph.hpp"
#include "aonpg/io.hpp"
#include "aonpg/stats.hpp"

namespace py = pybind11;
using namespace aonpg;

namespace {

SimConfig make_config(double alpha, double m, double eps_stop,
                      std::uint64_t max_rounds, std::uint64_t seed,
                      std::uint64_t record_stride)
{
    SimConfig cfg;
    cfg.alpha = LearningRate{alpha};
    cfg.payoff_exponent = m;
    cfg.eps_stop = eps_stop;
    cfg.max_rounds = max_rounds;
    cfg.seed = seed;
    cfg.record_stride = record_stride;
    cfg.validate();
    return cfg;
}

py::dict series_dict(std::vector<SeriesPoint> const& series)
{
    std::vector<std::uint64_t> rounds;
    std::vector<double> totals;
    for (auto const& p : series)
    {
        rounds.push_back(p.round);
        totals.push_back(p.total_belief);
    }
    py::dict d;
    d["round"] = rounds;
    d["total_belief"] = totals;
    return d;
}

}  // namespace

PYBIND11_MODULE(_aonpg, m)
{
    m.doc() = "All-or-nothing public goods game with EMA learning on networks";

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", [](Rng& r) { return r(); })
        .def("uniform", &Rng::uniform)
        .def("below", &Rng::below, py::arg("bound"));
    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));

    py::enum_<Action>(m, "Action")
        .value("Contribute", Action::Contribute)
        .value("Defect", Action::Defect);

    py::class_<PayoffModel>(m, "PayoffModel")
        .def(py::init<double>(), py::arg("exponent") = 4.0)
        .def_property_readonly("exponent", &PayoffModel::exponent)
        .def("cdf", &PayoffModel::cdf)
        .def("sample_lambda", &PayoffModel::sample_lambda);

    m.def("decide_action", &decide_action, py::arg("belief"),
          py::arg("group_size"), py::arg("lam"));
    m.def("contribute_probability",
          [](double x, int k, double exponent) {
              return contribute_probability(x, k, PayoffModel{exponent});
          },
          py::arg("belief"), py::arg("group_size"), py::arg("m") = 4.0);
    m.def("expected_utilities",
          [](double x, int k, double lambda) {
              auto u = expected_utilities(x, k, lambda);
              return py::make_tuple(u.contribute, u.defect);
          },
          py::arg("belief"), py::arg("group_size"), py::arg("lam"));
    m.def("update_belief",
          [](double x, double alpha, int c, int k) {
              return update_belief(x, LearningRate{alpha}, c, k);
          },
          py::arg("belief"), py::arg("alpha"),
          py::arg("contributors_among_others"), py::arg("group_size"));
    m.def("payoff", &payoff, py::arg("action"), py::arg("all_contributed"),
          py::arg("lam"));

    py::class_<GraphMetrics>(m, "GraphMetrics")
        .def_readonly("mean_degree", &GraphMetrics::mean_degree)
        .def_readonly("triangle_count", &GraphMetrics::triangle_count)
        .def_readonly("max_degree", &GraphMetrics::max_degree)
        .def_readonly("edge_count", &GraphMetrics::edge_count)
        .def_readonly("connected", &GraphMetrics::connected);

    py::class_<Graph>(m, "Graph")
        .def_static("from_edges",
                    [](std::size_t n, std::vector<Edge> const& edges) {
                        return Graph::from_edges(n, edges);
                    },
                    py::arg("n"), py::arg("edges"))
        .def("__len__", &Graph::size)
        .def_property_readonly("n", &Graph::size)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("degree", &Graph::degree)
        .def("neighbors",
             [](Graph const& g, Vertex v) {
                 auto nb = g.neighbors(v);
                 return std::vector<Vertex>(nb.begin(), nb.end());
             })
        .def("edges", &Graph::edges)
        .def_property_readonly("positions",
                               [](Graph const& g) -> py::object {
                                   if (!g.positions())
                                       return py::none();
                                   py::list out;
                                   for (auto p : *g.positions())
                                       out.append(py::make_tuple(p.x, p.y));
                                   return out;
                               })
        .def("to_edge_list",
             [](Graph const& g) {
                 std::ostringstream s;
                 save_edge_list(g, s);
                 return s.str();
             })
        .def_static("from_edge_list", [](std::string const& text) {
            std::istringstream s(text);
            return load_edge_list(s);
        });

    m.def("random_geometric", &random_geometric, py::arg("n"),
          py::arg("r_g"), py::arg("rng"));
    m.def("connected_random_geometric",
          [](std::size_t n, double r, Rng& rng, std::size_t attempts) {
              auto s = connected_random_geometric(n, r, rng, attempts);
              return py::make_tuple(std::move(s.graph), s.attempts);
          },
          py::arg("n"), py::arg("r_g"), py::arg("rng"),
          py::arg("max_attempts") = default_max_attempts);
    m.def("circulant", &circulant, py::arg("n"), py::arg("l"));
    m.def("is_connected", &is_connected);
    m.def("closed_neighborhood", &closed_neighborhood);
    m.def("compute_metrics", &compute_metrics);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init(&make_config), py::arg("alpha") = 0.3,
             py::arg("m") = 4.0, py::arg("eps_stop") = 1e-4,
             py::arg("max_rounds") = 10'000'000, py::arg("seed") = 0,
             py::arg("record_stride") = 0)
        .def_property_readonly("alpha",
                               [](SimConfig const& c) { return c.alpha.value(); })
        .def_readonly("m", &SimConfig::payoff_exponent)
        .def_readonly("eps_stop", &SimConfig::eps_stop)
        .def_readonly("max_rounds", &SimConfig::max_rounds)
        .def_readonly("seed", &SimConfig::seed)
        .def_readonly("record_stride", &SimConfig::record_stride);

    py::class_<RunResult>(m, "RunResult")
        .def_property_readonly("converged",
                               [](RunResult const& r) { return to_string(r.converged); })
        .def_readonly("tau", &RunResult::tau)
        .def_readonly("final_beliefs", &RunResult::final_beliefs)
        .def_readonly("rounds_executed", &RunResult::rounds_executed)
        .def_property_readonly("final_mean_belief", &RunResult::final_mean_belief)
        .def_property_readonly("series", [](RunResult const& r) {
            return series_dict(r.total_belief_series);
        });

    py::class_<RoundOutcome>(m, "RoundOutcome")
        .def_readonly("focal", &RoundOutcome::focal)
        .def_readonly("participants", &RoundOutcome::participants)
        .def_readonly("group_size", &RoundOutcome::group_size)
        .def_readonly("actions", &RoundOutcome::actions)
        .def_readonly("lambdas", &RoundOutcome::lambdas)
        .def_readonly("all_contributed", &RoundOutcome::all_contributed);

    py::class_<Simulation>(m, "Simulation")
        .def(py::init<Graph const&, SimConfig const&>(), py::keep_alive<1, 2>(),
             py::arg("graph"), py::arg("config"))
        .def(py::init<Graph const&, SimConfig const&, std::vector<double>>(),
             py::keep_alive<1, 2>(), py::arg("graph"), py::arg("config"),
             py::arg("beliefs"))
        .def("step", [](Simulation& s) { return s.step(); })
        .def("run", &Simulation::run)
        .def_property_readonly("beliefs",
                               [](Simulation const& s) { return s.state().beliefs; })
        .def_property_readonly("round",
                               [](Simulation const& s) { return s.state().round; })
        .def_property_readonly("total_belief", &Simulation::total_belief);

    m.def("run", &run, py::arg("graph"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("check_convergence",
          [](std::vector<double> const& x, double eps) -> py::object {
              switch (check_convergence(x, eps))
              {
                  case Convergence::ContributeCorner:
                      return py::str("contribute");
                  case Convergence::DefectCorner:
                      return py::str("defect");
                  case Convergence::None:
                      break;
              }
              return py::none();
          },
          py::arg("beliefs"), py::arg("eps_stop"));
    m.def("absorption_horizon",
          [](double alpha, double eps) {
              return absorption_horizon(LearningRate{alpha}, eps);
          },
          py::arg("alpha"), py::arg("eps"));
    m.def("corner_epsilon_bound",
          [](Graph const& g, double alpha) {
              return corner_epsilon_bound(g, LearningRate{alpha});
          },
          py::arg("graph"), py::arg("alpha"));

    py::class_<BatchResult>(m, "BatchResult")
        .def_property_readonly("n_runs",
                               [](BatchResult const& b) { return b.runs.size(); })
        .def("outcome_table",
             [](BatchResult const& b) {
                 auto t = outcome_table(b);
                 return py::make_tuple(t.frac_contribute(), t.frac_defect(),
                                       t.frac_timeout());
             })
        .def("taus", [](BatchResult const& b) { return censored_taus(b); })
        .def("runs_csv",
             [](BatchResult const& b) {
                 std::ostringstream s;
                 write_runs_csv(b, s);
                 return s.str();
             })
        .def("result", [](BatchResult const& b, std::size_t i) {
            return b.runs.at(i).result;
        });

    m.def("run_batch",
          [](std::string const& kind, std::size_t n, double r_g, std::size_t l,
             std::string const& path, std::size_t n_runs,
             std::uint64_t master_seed, SimConfig const& cfg,
             unsigned parallelism, bool fresh_graph) {
              BatchSpec spec;
              if (kind == "rgg")
                  spec.graph.kind = GraphKind::RandomGeometric;
              else if (kind == "circulant")
                  spec.graph.kind = GraphKind::Circulant;
              else if (kind == "file")
                  spec.graph.kind = GraphKind::File;
              else
                  throw std::invalid_argument("unknown graph kind '" + kind + "'");
              spec.graph.n = n;
              spec.graph.radius = r_g;
              spec.graph.l = l;
              spec.graph.path = path;
              spec.n_runs = n_runs;
              spec.master_seed = master_seed;
              spec.cfg = cfg;
              spec.parallelism = parallelism;
              spec.fresh_graph_per_run = fresh_graph;
              py::gil_scoped_release release;
              return run_batch(spec);
          },
          py::arg("kind"), py::arg("n") = 50, py::arg("r_g") = 0.3,
          py::arg("l") = 2, py::arg("path") = "", py::arg("n_runs") = 500,
          py::arg("master_seed") = 0, py::arg("config") = SimConfig{},
          py::arg("parallelism") = 1, py::arg("fresh_graph") = true);

    m.def("tail_probability",
          [](std::vector<std::uint64_t> const& taus,
             std::vector<std::uint64_t> const& grid) {
              std::vector<std::pair<std::uint64_t, double>> out;
              for (auto p : tail_probability(taus, grid))
                  out.emplace_back(p.t, p.survival);
              return out;
          },
          py::arg("taus"), py::arg("grid"));
    m.def("log_grid", &log_grid, py::arg("t_max"),
          py::arg("points_per_decade") = 20);
    m.def("catastrophe_ratio",
          [](std::vector<double> const& samples, double t, std::size_t pairs,
             bool replacement, std::uint64_t seed) {
              Rng rng(seed);
              auto r = catastrophe_ratio(samples, t, pairs, replacement, rng);
              return py::make_tuple(r.p_max, r.p_sum, r.ratio);
          },
          py::arg("samples"), py::arg("t"), py::arg("n_pairs"),
          py::arg("with_replacement") = false, py::arg("seed") = 0);
    m.def("pearson", &pearson);
    m.def("metastability_report",
          [](std::vector<std::uint64_t> const& rounds,
             std::vector<double> const& totals, double population,
             std::size_t window, double band) {
              if (rounds.size() != totals.size())
                  throw std::invalid_argument("rounds and totals differ in length");
              std::vector<SeriesPoint> series;
              for (std::size_t i = 0; i < rounds.size(); ++i)
                  series.push_back({rounds[i], totals[i]});
              auto rep = metastability_report(series, population, window, band);
              py::list plateaus;
              for (auto const& p : rep.plateaus)
              {
                  py::dict d;
                  d["start_round"] = p.start_round;
                  d["end_round"] = p.end_round;
                  d["length"] = p.length();
                  d["level"] = p.level;
                  d["exit_round"] = p.exit_round;
                  plateaus.append(d);
              }
              return plateaus;
          },
          py::arg("rounds"), py::arg("totals"), py::arg("population"),
          py::arg("window") = 100, py::arg("band") = 2.5);
}
