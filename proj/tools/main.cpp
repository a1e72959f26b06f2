#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bnaco/errors.hpp"
#include "bnaco/evaluation.hpp"
#include "bnaco/json_io.hpp"
#include "bnaco/network.hpp"
#include "bnaco/search.hpp"

namespace {

using namespace bnaco;

struct LearnOptions {
    std::string algo = "aco-e";
    std::string data_path;
    std::string prior_net_path;
    std::string out_path;
    std::string stats_path;
    std::string score = "bdeu";
    double ess = 4.0;
    double kappa = 0.2;
    double rho = 0.1;
    double q0 = 0.8;
    double beta = 1.0;
    int ants = 10;
    int iters = 200;
    int tstep = 201;
    int max_parents = 5;
    std::uint64_t seed = 0;
};

Metric parse_metric(const std::string& name) {
    if (name == "bdeu") return Metric::Bdeu;
    if (name == "bic") return Metric::Bic;
    if (name == "aic") return Metric::Aic;
    throw ConfigError("unknown score '" + name + "'");
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "aco-e") return Algorithm::AcoE;
    if (name == "aco-b") return Algorithm::AcoB;
    if (name == "greedy-e") return Algorithm::GreedyE;
    throw ConfigError("unknown algorithm '" + name + "'");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Prior-structure arcs remapped onto the dataset's column order by name.
Dag prior_from_net(const DiscreteBayesNet& net, const Dataset& data) {
    std::map<std::string, int> index;
    for (int i = 0; i < data.var_count(); ++i) index[data.variable(i).name] = i;
    Dag prior(data.var_count());
    for (const auto& [t, h] : net.structure().arcs()) {
        auto ti = index.find(net.variable(t).name);
        auto hi = index.find(net.variable(h).name);
        if (ti == index.end() || hi == index.end())
            throw ConfigError("prior network variable '" +
                              net.variable(ti == index.end() ? t : h).name +
                              "' not present in the dataset");
        prior.add_arc(ti->second, hi->second);
    }
    return prior;
}

// Deletes the file on destruction unless released; keeps failed runs from
// leaving partial outputs behind.
class OutputGuard {
public:
    explicit OutputGuard(std::string path) : path_(std::move(path)) {}
    ~OutputGuard() {
        if (!released_ && !path_.empty()) std::remove(path_.c_str());
    }
    void release() { released_ = true; }

private:
    std::string path_;
    bool released_ = false;
};

int run_sample(const std::string& net_path, int n, std::uint64_t seed,
               const std::string& out_path) {
    std::cerr << "config: cmd=sample net=" << net_path << " n=" << n << " seed=" << seed
              << " out=" << out_path << "\n";
    DiscreteBayesNet net = load_network_file(net_path);
    Dataset data = forward_sample(net, n, seed);
    write_file(out_path, write_dataset(data));
    return 0;
}

int run_learn(const LearnOptions& opt) {
    std::cerr << "config: cmd=learn algo=" << opt.algo << " data=" << opt.data_path
              << " prior-net=" << (opt.prior_net_path.empty() ? "-" : opt.prior_net_path)
              << " score=" << opt.score << " ess=" << format_double(opt.ess)
              << " kappa=" << format_double(opt.kappa) << " rho=" << format_double(opt.rho)
              << " q0=" << format_double(opt.q0) << " beta=" << format_double(opt.beta)
              << " ants=" << opt.ants << " iters=" << opt.iters << " tstep=" << opt.tstep
              << " max-parents=" << opt.max_parents << " seed=" << opt.seed
              << " out=" << opt.out_path
              << " stats=" << (opt.stats_path.empty() ? "-" : opt.stats_path) << "\n";

    const Algorithm algo = parse_algorithm(opt.algo);
    Dataset data = load_dataset_file(opt.data_path);

    ScoringConfig cfg;
    cfg.metric = parse_metric(opt.score);
    cfg.ess = opt.ess;
    cfg.kappa = opt.kappa;
    cfg.max_parents = opt.max_parents;
    if (!opt.prior_net_path.empty())
        cfg.prior_graph = prior_from_net(load_network_file(opt.prior_net_path), data);
    cfg.validate();

    AcoParams params;
    params.t_max = opt.iters;
    params.t_step = opt.tstep;
    params.ants = opt.ants;
    params.rho = opt.rho;
    params.q0 = opt.q0;
    params.beta = opt.beta;
    params.seed = opt.seed;

    std::ofstream stats_stream;
    OutputGuard stats_guard(opt.stats_path);
    StatsSink sink;
    if (!opt.stats_path.empty()) {
        stats_stream.open(opt.stats_path, std::ios::trunc);
        if (!stats_stream) throw Error("cannot open '" + opt.stats_path + "' for writing");
        stats_stream << "iteration,best_score,total_evals,distinct_evals\n";
        stats_stream.precision(10);
        sink = [&stats_stream](const IterationStats& row) {
            stats_stream << row.iteration << ',' << row.best_score << ',' << row.total_evals
                         << ',' << row.distinct_evals << '\n';
            stats_stream.flush();
        };
    }

    SearchResult result;
    switch (algo) {
        case Algorithm::AcoE:
            result = aco_e(data, cfg, params, OperatorSet::all(), sink);
            break;
        case Algorithm::AcoB:
            std::cerr << "note: aco-b initializes pheromone from a greedy DAG-search baseline\n";
            result = aco_b(data, cfg, params, sink);
            break;
        case Algorithm::GreedyE:
            result = greedy_e_search(data, cfg, OperatorSet::all(), sink);
            break;
    }

    std::vector<std::string> names;
    for (int i = 0; i < data.var_count(); ++i) names.push_back(data.variable(i).name);
    write_file(opt.out_path, cpdag_to_json(result.best, names));
    stats_guard.release();

    std::ostringstream summary;
    summary.precision(10);
    summary << "score " << result.score << "\n";
    std::cout << summary.str();
    return 0;
}

int run_eval_shd(const std::string& learned_path, const std::string& truth_path) {
    std::cerr << "config: cmd=eval-shd learned=" << learned_path << " truth=" << truth_path
              << "\n";
    NamedCpdag learned = load_cpdag_file(learned_path);
    DiscreteBayesNet truth_net = load_network_file(truth_path);
    if (truth_net.var_count() != learned.graph.node_count())
        throw ConfigError("eval shd: node counts differ");
    // align truth nodes to the learned graph's name order
    std::map<std::string, int> learned_index;
    for (std::size_t i = 0; i < learned.names.size(); ++i)
        learned_index[learned.names[i]] = static_cast<int>(i);
    std::vector<int> remap(truth_net.var_count());
    for (int i = 0; i < truth_net.var_count(); ++i) {
        auto it = learned_index.find(truth_net.variable(i).name);
        if (it == learned_index.end())
            throw ConfigError("eval shd: variable '" + truth_net.variable(i).name +
                              "' missing from learned model");
        remap[i] = it->second;
    }
    Cpdag truth_c = dag_to_cpdag(truth_net.structure());
    Cpdag truth_aligned(truth_c.node_count());
    for (const auto& [t, h] : truth_c.directed_edges())
        truth_aligned.add_directed(remap[t], remap[h]);
    for (const auto& [a, b] : truth_c.undirected_edges())
        truth_aligned.add_undirected(remap[a], remap[b]);
    std::cout << shd(learned.graph, truth_aligned) << "\n";
    return 0;
}

int run_applicability(const std::string& data_path, int resamples, std::uint64_t seed, double ess,
                      int max_parents, const std::string& out_path) {
    std::cerr << "config: cmd=applicability data=" << data_path << " resamples=" << resamples
              << " seed=" << seed << " ess=" << format_double(ess)
              << " max-parents=" << max_parents << " out=" << (out_path.empty() ? "-" : out_path)
              << "\n";
    Dataset data = load_dataset_file(data_path);
    ScoringConfig cfg;
    cfg.ess = ess;
    cfg.kappa = 1.0;  // equal structure priors
    cfg.max_parents = max_parents;
    ApplicabilityResult result = applicability_estimate(data, resamples, cfg, seed);
    if (!out_path.empty()) {
        std::ostringstream csv;
        csv.precision(10);
        csv << "resample,vstructs_per_node\n";
        for (std::size_t i = 0; i < result.values.size(); ++i)
            csv << i << ',' << result.values[i] << '\n';
        write_file(out_path, csv.str());
    }
    std::ostringstream mean;
    mean.precision(10);
    mean << result.mean << "\n";
    std::cout << mean.str();
    return 0;
}

struct SweepCell {
    double rho, q0, beta;
    int ants;
};

int run_bench(const std::string& config_path, const std::string& outdir, bool dry_run) {
    std::cerr << "config: cmd=bench config=" << config_path << " outdir=" << outdir
              << " dry-run=" << (dry_run ? 1 : 0) << "\n";
    std::ifstream in(config_path);
    if (!in) throw ParseError("bench: cannot open '" + config_path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bench: invalid JSON: ") + e.what());
    }

    ExperimentConfig base;
    std::string net_path;
    try {
        net_path = doc.at("network").get<std::string>();
        base.net = load_network_file(net_path);
        base.algorithm = parse_algorithm(doc.value("algo", std::string("aco-e")));
        if (doc.at("sample_sizes").is_array())
            base.sample_sizes = doc.at("sample_sizes").get<std::vector<int>>();
        else
            base.sample_sizes = {doc.at("sample_sizes").get<int>()};
        base.repetitions = doc.value("repetitions", 1);
        base.seed = doc.value("seed", std::uint64_t{0});
        base.params.t_max = doc.value("iters", 200);
        base.params.t_step = doc.value("tstep", base.params.t_max + 1);
        base.scoring.metric = parse_metric(doc.value("score", std::string("bdeu")));
        base.scoring.ess = doc.value("ess", 4.0);
        base.scoring.kappa = doc.value("kappa", 0.2);
        base.scoring.max_parents = doc.value("max_parents", 5);

        const auto& grid = doc.at("grid");
        const auto rhos = grid.at("rho").get<std::vector<double>>();
        const auto q0s = grid.at("q0").get<std::vector<double>>();
        const auto betas = grid.at("beta").get<std::vector<double>>();
        const auto ants = grid.at("ants").get<std::vector<int>>();

        std::vector<SweepCell> cells;
        for (double rho : rhos)
            for (double q0 : q0s)
                for (double beta : betas)
                    for (int m : ants) cells.push_back({rho, q0, beta, m});

        if (dry_run) {
            for (const auto& c : cells)
                std::cout << "rho=" << format_double(c.rho) << " q0=" << format_double(c.q0)
                          << " beta=" << format_double(c.beta) << " m=" << c.ants << "\n";
            std::cerr << "bench: " << cells.size() << " cells\n";
            return 0;
        }

        std::filesystem::create_directories(outdir);
        std::ostringstream manifest;
        manifest << "cell,rho,q0,beta,m,sample_size,report\n";
        int cell_id = 0;
        for (const auto& c : cells) {
            ExperimentConfig cfg = base;
            cfg.params.rho = c.rho;
            cfg.params.q0 = c.q0;
            cfg.params.beta = c.beta;
            cfg.params.ants = c.ants;
            // derive a distinct deterministic stream per cell
            cfg.seed = Rng(base.seed).stream(static_cast<std::uint64_t>(cell_id)).next_u64();
            const auto reports = run_experiment(cfg);
            for (const auto& report : reports) {
                std::string name = "cell" + std::to_string(cell_id) + "_rho" +
                                   format_double(c.rho) + "_q0" + format_double(c.q0) + "_beta" +
                                   format_double(c.beta) + "_m" + std::to_string(c.ants) + "_n" +
                                   std::to_string(report.sample_size) + ".csv";
                const std::string path = (std::filesystem::path(outdir) / name).string();
                write_file(path, report_to_csv(report));
                manifest << cell_id << ',' << format_double(c.rho) << ',' << format_double(c.q0)
                         << ',' << format_double(c.beta) << ',' << c.ants << ','
                         << report.sample_size << ',' << name << '\n';
            }
            ++cell_id;
        }
        write_file((std::filesystem::path(outdir) / "cells.csv").string(), manifest.str());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bench: sweep schema violation: ") + e.what());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bnaco: Bayesian network structure learning by ant colony optimization "
                 "over equivalence classes"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "Draw a dataset from a network");
    std::string sample_net, sample_out;
    int sample_n = 1000;
    std::uint64_t sample_seed = 0;
    sample->add_option("--net", sample_net, "network JSON file")->required();
    sample->add_option("--n", sample_n, "number of rows")->required();
    sample->add_option("--seed", sample_seed, "random seed");
    sample->add_option("--out", sample_out, "output CSV path")->required();

    // learn
    auto* learn = app.add_subcommand("learn", "Learn a CPDAG from data");
    LearnOptions opt;
    learn->add_option("--algo", opt.algo, "aco-e | aco-b | greedy-e")
        ->check(CLI::IsMember({"aco-e", "aco-b", "greedy-e"}));
    learn->add_option("--data", opt.data_path, "training CSV")->required();
    learn->add_option("--prior-net", opt.prior_net_path, "prior-structure network JSON");
    learn->add_option("--out", opt.out_path, "output model JSON")->required();
    learn->add_option("--stats", opt.stats_path, "per-iteration stats CSV");
    learn->add_option("--score", opt.score, "bdeu | bic | aic")
        ->check(CLI::IsMember({"bdeu", "bic", "aic"}));
    learn->add_option("--ess", opt.ess, "equivalent sample size");
    learn->add_option("--kappa", opt.kappa, "structure-prior base in (0,1]");
    learn->add_option("--rho", opt.rho, "pheromone evaporation/deposition rate");
    learn->add_option("--q0", opt.q0, "exploitation threshold");
    learn->add_option("--beta", opt.beta, "heuristic exponent");
    learn->add_option("--ants", opt.ants, "ants per iteration");
    learn->add_option("--iters", opt.iters, "iterations");
    learn->add_option("--tstep", opt.tstep, "local-search period");
    learn->add_option("--max-parents", opt.max_parents, "parent limit per node");
    learn->add_option("--seed", opt.seed, "random seed");

    // eval shd
    auto* eval = app.add_subcommand("eval", "Evaluate a learned model");
    eval->require_subcommand(1);
    auto* eval_shd = eval->add_subcommand("shd", "Structural Hamming distance to a network");
    std::string shd_learned, shd_truth;
    eval_shd->add_option("--learned", shd_learned, "learned model JSON")->required();
    eval_shd->add_option("--truth", shd_truth, "generating network JSON")->required();

    // applicability
    auto* applic = app.add_subcommand("applicability",
                                      "Bootstrap v-structures-per-node estimate");
    std::string app_data, app_out;
    int app_resamples = 100;
    std::uint64_t app_seed = 0;
    double app_ess = 4.0;
    int app_max_parents = 5;
    applic->add_option("--data", app_data, "dataset CSV")->required();
    applic->add_option("--resamples", app_resamples, "bootstrap resamples");
    applic->add_option("--seed", app_seed, "random seed");
    applic->add_option("--ess", app_ess, "equivalent sample size");
    applic->add_option("--max-parents", app_max_parents, "parent limit per node");
    applic->add_option("--out", app_out, "per-resample CSV path");

    // bench
    auto* bench = app.add_subcommand("bench", "Run a parameter sweep from a JSON config");
    std::string bench_config, bench_outdir;
    bool bench_dry = false;
    bench->add_option("--config", bench_config, "sweep JSON file")->required();
    bench->add_option("--outdir", bench_outdir, "directory for report CSVs")->required();
    bench->add_flag("--dry-run", bench_dry, "list cells without running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sample->parsed()) return run_sample(sample_net, sample_n, sample_seed, sample_out);
        if (learn->parsed()) return run_learn(opt);
        if (eval->parsed()) return run_eval_shd(shd_learned, shd_truth);
        if (applic->parsed())
            return run_applicability(app_data, app_resamples, app_seed, app_ess, app_max_parents,
                                     app_out);
        if (bench->parsed()) return run_bench(bench_config, bench_outdir, bench_dry);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
