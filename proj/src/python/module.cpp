#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "bnaco/errors.hpp"
#include "bnaco/evaluation.hpp"
#include "bnaco/json_io.hpp"
#include "bnaco/network.hpp"
#include "bnaco/search.hpp"

namespace py = pybind11;
using namespace bnaco;

namespace {

ScoringConfig make_scoring(const std::string& score, double ess, double kappa, int max_parents) {
    ScoringConfig cfg;
    if (score == "bdeu")
        cfg.metric = Metric::Bdeu;
    else if (score == "bic")
        cfg.metric = Metric::Bic;
    else if (score == "aic")
        cfg.metric = Metric::Aic;
    else
        throw ConfigError("unknown score '" + score + "'");
    cfg.ess = ess;
    cfg.kappa = kappa;
    cfg.max_parents = max_parents;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_bnaco, m) {
    m.doc() = "Bayesian network structure learning by ant colony optimization over "
              "equivalence classes";

    py::register_exception<NoConsistentExtension>(m, "NoConsistentExtensionError");

    py::class_<Dag>(m, "Dag")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("n", &Dag::node_count)
        .def("add_arc", &Dag::add_arc)
        .def("arcs", &Dag::arcs)
        .def("parents", [](const Dag& g, int v) { return g.parents(v); })
        .def("is_acyclic", &Dag::is_acyclic)
        .def(py::self == py::self)
        .def("__repr__", [](const Dag& g) {
            return "Dag(n=" + std::to_string(g.node_count()) +
                   ", arcs=" + std::to_string(g.arc_count()) + ")";
        });

    py::class_<Cpdag>(m, "Cpdag")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("n", &Cpdag::node_count)
        .def("add_directed", &Cpdag::add_directed)
        .def("add_undirected", &Cpdag::add_undirected)
        .def("directed_edges", &Cpdag::directed_edges)
        .def("undirected_edges", &Cpdag::undirected_edges)
        .def(py::self == py::self)
        .def("__repr__", [](const Cpdag& p) {
            return "Cpdag(n=" + std::to_string(p.node_count()) +
                   ", directed=" + std::to_string(p.directed_count()) +
                   ", undirected=" + std::to_string(p.undirected_count()) + ")";
        });

    m.def("dag_to_cpdag", &dag_to_cpdag, py::arg("dag"));
    m.def("pdag_to_dag", &pdag_to_dag, py::arg("cpdag"));
    m.def("skeleton_size",
          [](const Cpdag& p) { return skeleton(p).size(); });
    m.def("v_structure_count",
          [](const Cpdag& p) { return v_structures(p).size(); });
    m.def("shd", &shd, py::arg("a"), py::arg("b"));

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n_rows", &Dataset::row_count)
        .def_property_readonly("n_vars", &Dataset::var_count)
        .def("names", [](const Dataset& d) {
            std::vector<std::string> out;
            for (int i = 0; i < d.var_count(); ++i) out.push_back(d.variable(i).name);
            return out;
        })
        .def("to_csv", &write_dataset);

    py::class_<DiscreteBayesNet>(m, "DiscreteBayesNet")
        .def_property_readonly("name", &DiscreteBayesNet::name)
        .def_property_readonly("n_vars", &DiscreteBayesNet::var_count)
        .def_property_readonly("structure", &DiscreteBayesNet::structure)
        .def("sample",
             [](const DiscreteBayesNet& net, int n, std::uint64_t seed) {
                 return forward_sample(net, n, seed);
             },
             py::arg("n"), py::arg("seed") = 0)
        .def("to_json", &serialize_network);

    m.def("parse_network", &parse_network, py::arg("text"));
    m.def("load_network", &load_network_file, py::arg("path"));
    m.def("load_dataset", py::overload_cast<const std::string&>(&load_dataset), py::arg("csv"));

    m.def(
        "score_structure",
        [](const Cpdag& p, const Dataset& data, const std::string& score, double ess,
           double kappa, int max_parents) {
            Scorer scorer(data, make_scoring(score, ess, kappa, max_parents));
            return scorer.structure(p);
        },
        py::arg("cpdag"), py::arg("data"), py::arg("score") = "bdeu", py::arg("ess") = 4.0,
        py::arg("kappa") = 1.0, py::arg("max_parents") = 8);

    m.def(
        "learn",
        [](const Dataset& data, const std::string& algo, const std::string& score, double ess,
           double kappa, int max_parents, int iters, int tstep, int ants, double rho, double q0,
           double beta, std::uint64_t seed) {
            ScoringConfig cfg = make_scoring(score, ess, kappa, max_parents);
            AcoParams params;
            params.t_max = iters;
            params.t_step = tstep;
            params.ants = ants;
            params.rho = rho;
            params.q0 = q0;
            params.beta = beta;
            params.seed = seed;
            SearchResult result;
            if (algo == "aco-e")
                result = aco_e(data, cfg, params);
            else if (algo == "aco-b")
                result = aco_b(data, cfg, params);
            else if (algo == "greedy-e")
                result = greedy_e_search(data, cfg);
            else
                throw ConfigError("unknown algorithm '" + algo + "'");
            py::dict out;
            out["cpdag"] = result.best;
            out["score"] = result.score;
            py::list moves;
            for (const auto& mv : result.path.moves) moves.append(mv.text());
            out["path"] = moves;
            py::list stats;
            for (const auto& row : result.stats)
                stats.append(py::make_tuple(row.iteration, row.best_score, row.total_evals,
                                            row.distinct_evals));
            out["stats"] = stats;
            return out;
        },
        py::arg("data"), py::arg("algo") = "aco-e", py::arg("score") = "bdeu",
        py::arg("ess") = 4.0, py::arg("kappa") = 0.2, py::arg("max_parents") = 5,
        py::arg("iters") = 200, py::arg("tstep") = 201, py::arg("ants") = 10,
        py::arg("rho") = 0.1, py::arg("q0") = 0.8, py::arg("beta") = 1.0, py::arg("seed") = 0);

    m.def(
        "applicability",
        [](const Dataset& data, int resamples, std::uint64_t seed, double ess, int max_parents) {
            ScoringConfig cfg;
            cfg.ess = ess;
            cfg.max_parents = max_parents;
            auto result = applicability_estimate(data, resamples, cfg, seed);
            return py::make_tuple(result.mean, result.values);
        },
        py::arg("data"), py::arg("resamples") = 100, py::arg("seed") = 0, py::arg("ess") = 4.0,
        py::arg("max_parents") = 5);

    m.def("cpdag_to_json",
          [](const Cpdag& p, const std::vector<std::string>& names) {
              return cpdag_to_json(p, names);
          },
          py::arg("cpdag"), py::arg("names"));
    m.def("cpdag_from_json", [](const std::string& text) {
        NamedCpdag named = cpdag_from_json(text);
        return py::make_tuple(named.graph, named.names);
    });
}
