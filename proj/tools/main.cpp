// roadprio: black-box test-case prioritization for simulation-based
// driving-scenario suites. Extracts static road features, reduces them
// with PCA, orders tests by diversity-per-cost (GA / greedy / random)
// and scores orderings with cost-cognizant fault-detection metrics.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "roadprio/experiment.hpp"
#include "roadprio/pipeline.hpp"
#include "roadprio/synth.hpp"

namespace {

using namespace roadprio;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

std::int64_t elapsed_ms(Clock::time_point start) {
    const auto ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return std::max<std::int64_t>(1, (ns.count() + 999'999) / 1'000'000);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write output file: " + path.string());
    }
    out << text;
}

void warn_constant_columns(const std::vector<Eigen::Index>& columns) {
    for (Eigen::Index col : columns) {
        std::cerr << "warning: feature column " << feature_names()[static_cast<std::size_t>(col)]
                  << " is constant; z-scored to all zeros\n";
    }
}

struct CommonOpts {
    std::string corpus_path;
    std::string out_path;
    std::uint64_t seed = 0;
    std::string format = "json";
};

int cmd_synth(const BenchConfig& cfg, const std::string& out_path,
              const std::string& manifest_path) {
    SynthStats stats;
    const std::vector<RoadScenario> corpus = generate_corpus(cfg, &stats);
    save_corpus(corpus, out_path);
    const std::string manifest =
        manifest_path.empty() ? out_path + ".manifest.json" : manifest_path;
    write_text_file(manifest, synth_manifest(cfg, stats));
    std::cout << "wrote " << corpus.size() << " scenarios (" << stats.unsafe_count
              << " unsafe) to " << out_path << "\n";
    return kExitOk;
}

int cmd_extract(const CommonOpts& opts) {
    const auto corpus = load_corpus(opts.corpus_path);
    const FeatureMatrix matrix = build_feature_matrix(corpus);
    std::ostringstream csv;
    write_features_csv(matrix, csv);
    write_text_file(opts.out_path, csv.str());
    return kExitOk;
}

int cmd_fit_pca(const CommonOpts& opts, const std::string& reduced_path) {
    const auto corpus = load_corpus(opts.corpus_path);
    if (corpus.size() < 2) {
        throw ValidationError("PCA needs a corpus of at least 2 scenarios");
    }
    const FeatureMatrix matrix = build_feature_matrix(corpus);
    const ZscoreResult z = zscore_fit_apply(matrix.values);
    warn_constant_columns(z.constant_columns);
    const PcaModel model = pca_fit(z);
    write_text_file(opts.out_path, pca_model_to_json(model));
    if (!reduced_path.empty()) {
        ReducedMatrix reduced{pca_project(model, z.z), matrix.ids};
        std::ostringstream csv;
        write_reduced_csv(reduced, csv);
        write_text_file(reduced_path, csv.str());
    }
    std::cout << "fitted PCA model: h = " << model.h << " of "
              << model.component_count() << " components\n";
    return kExitOk;
}

int cmd_prioritize(const CommonOpts& opts, const std::string& strategy,
                   const GaConfig& ga, const std::string& cache_dir) {
    std::string corpus_text;
    {
        std::ifstream in(opts.corpus_path, std::ios::binary);
        if (!in) {
            throw ValidationError("cannot open corpus file: " + opts.corpus_path);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        corpus_text = buf.str();
    }
    const auto corpus = parse_corpus(corpus_text);
    if (corpus.size() < 2) {
        throw ValidationError("prioritization needs a corpus of at least 2 scenarios");
    }

    // Timing starts after corpus I/O: feature extraction, normalization,
    // PCA, the distance matrix and the search all count as overhead.
    const auto start = Clock::now();
    std::optional<Pipeline> pipeline;
    std::optional<DistanceMatrix> cached;
    const std::uint64_t key = content_hash(corpus_text);
    std::filesystem::path cache_file;
    if (!cache_dir.empty()) {
        char name[32];
        std::snprintf(name, sizeof(name), "dist-%016llx.bin",
                      static_cast<unsigned long long>(key));
        cache_file = std::filesystem::path(cache_dir) / name;
        cached = read_distance_cache(cache_file, key);
    }
    Pipeline p = build_pipeline(corpus);
    warn_constant_columns(p.constant_feature_columns);
    if (cached && cached->size() == p.distances.size()) {
        p.distances = std::move(*cached);
    } else if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        write_distance_cache(cache_file, p.distances, key);
    }

    TestOrder order;
    std::optional<double> best_fitness;
    if (strategy == "ga") {
        GaConfig config = ga;
        config.rng_seed = opts.seed;
        GaResult result = ga_run(p.distances, p.costs, config);
        order = std::move(result.best_order);
        best_fitness = result.best_fitness;
    } else if (strategy == "greedy") {
        Rng rng(opts.seed);
        order = greedy_order(p.distances, rng);
        best_fitness = fitness(order, p.distances, p.costs);
    } else if (strategy == "random") {
        Rng rng(opts.seed);
        order = random_order(p.distances.size(), rng);
        best_fitness = fitness(order, p.distances, p.costs);
    } else {
        throw ValidationError("unknown strategy \"" + strategy +
                              "\" (expected ga, greedy or random)");
    }
    const std::int64_t wall_ms = elapsed_ms(start);

    nlohmann::json doc;
    doc["strategy"] = strategy;
    doc["seed"] = opts.seed;
    nlohmann::json ids = nlohmann::json::array();
    for (std::uint32_t idx : order.perm) {
        ids.push_back(p.ids[idx]);
    }
    doc["order"] = std::move(ids);
    doc["fitness"] = best_fitness ? nlohmann::json(*best_fitness) : nlohmann::json(nullptr);
    doc["wall_time_ms"] = wall_ms;
    write_text_file(opts.out_path, doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& order_path) {
    const auto corpus = load_corpus(opts.corpus_path);
    const FaultProfile faults = fault_profile(corpus);

    std::ifstream in(order_path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open ordering file: " + order_path);
    }
    nlohmann::json order_doc = nlohmann::json::parse(in, nullptr, false);
    if (order_doc.is_discarded() || !order_doc.is_object() ||
        !order_doc.contains("order") || !order_doc["order"].is_array()) {
        throw ValidationError("ordering file must be a JSON object with an \"order\" array");
    }

    std::unordered_map<std::string, std::uint32_t> index_of;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        index_of[corpus[i].id] = static_cast<std::uint32_t>(i);
    }
    TestOrder order;
    for (const auto& id : order_doc["order"]) {
        auto it = index_of.find(id.get<std::string>());
        if (it == index_of.end()) {
            throw ValidationError("ordering references unknown test id \"" +
                                  id.get<std::string>() + "\"");
        }
        order.perm.push_back(it->second);
    }
    if (!is_permutation_of(order, corpus.size())) {
        throw ValidationError("ordering is not a permutation of the corpus");
    }

    std::vector<double> costs;
    costs.reserve(corpus.size());
    for (const RoadScenario& s : corpus) {
        costs.push_back(s.cost_s);
    }
    const std::optional<double> score = apfd_c(order, costs, faults);
    const std::vector<CurvePoint> curve = detection_curve(order, costs, faults);

    const std::string strategy = order_doc.value("strategy", std::string("unknown"));
    const std::uint64_t seed = order_doc.value("seed", std::uint64_t{0});
    if (opts.format == "csv") {
        std::ostringstream csv;
        csv << "strategy,seed,position,cum_cost,cum_faults\n";
        for (std::size_t p = 0; p < curve.size(); ++p) {
            csv << strategy << ',' << seed << ',' << (p + 1) << ','
                << format_double(curve[p].cum_cost) << ',' << curve[p].cum_faults << '\n';
        }
        write_text_file(opts.out_path, csv.str());
    } else {
        nlohmann::json doc;
        doc["strategy"] = strategy;
        doc["seed"] = seed;
        doc["apfdc"] = score ? nlohmann::json(*score) : nlohmann::json("no-faults");
        nlohmann::json points = nlohmann::json::array();
        for (const CurvePoint& p : curve) {
            points.push_back({p.cum_cost, p.cum_faults});
        }
        doc["curve"] = std::move(points);
        write_text_file(opts.out_path, doc.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_experiment(const CommonOpts& opts, ExperimentConfig config,
                   const std::string& out_dir) {
    const auto corpus = load_corpus(opts.corpus_path);
    config.base_seed = opts.seed;
    config.dataset_name = std::filesystem::path(opts.corpus_path).stem().string();
    const EvalReport report = run_experiment(corpus, config);
    write_experiment_artifacts(report, out_dir);
    for (const StrategySummary& s : report.summaries) {
        std::cout << s.strategy << ": mean APFD_c " << s.mean_apfdc
                  << ", mean search wall " << s.mean_search_wall_ms
                  << " ms, overhead fraction " << s.overhead_fraction << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Black-box test-case prioritization for driving-scenario suites"};
    app.require_subcommand(1);

    CommonOpts opts;
    BenchConfig bench;
    GaConfig ga;
    ExperimentConfig experiment;
    std::string strategy = "ga";
    std::string reduced_path;
    std::string order_path;
    std::string manifest_path;
    std::string cache_dir;
    std::string out_dir = "experiment-out";
    std::string strategies_csv = "ga,greedy,random";

    auto add_corpus = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", opts.corpus_path, "Scenario corpus JSON file")
            ->required();
    };
    auto add_out = [&](CLI::App* cmd, const char* what) {
        cmd->add_option("--out", opts.out_path, what)->required();
    };
    auto add_ga_params = [&](CLI::App* cmd) {
        cmd->add_option("--population", ga.population_size, "GA population size");
        cmd->add_option("--generations", ga.generations, "GA generations");
        cmd->add_option("--crossover-prob", ga.crossover_prob, "GA crossover probability");
        cmd->add_option_function<double>(
            "--mutation-prob",
            [&ga](double v) { ga.mutation_prob = v; },
            "GA mutation probability (default 1/m)");
    };

    CLI::App* synth = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
    synth->add_option("--n", bench.n_tests, "Number of scenarios");
    synth->add_option("--unsafe-ratio", bench.unsafe_ratio, "Target fraction of unsafe tests");
    synth->add_option("--tightness", bench.cluster_tightness,
                      "Relative std of unsafe-cluster noise");
    synth->add_option("--cost-min", bench.cost_range[0], "Minimum cost in seconds");
    synth->add_option("--cost-max", bench.cost_range[1], "Maximum cost in seconds");
    synth->add_option("--seed", bench.rng_seed, "RNG seed");
    synth->add_option("--out", opts.out_path, "Corpus output path")->required();
    synth->add_option("--manifest", manifest_path, "Manifest output path");

    CLI::App* extract = app.add_subcommand("extract", "Extract road features to CSV");
    add_corpus(extract);
    add_out(extract, "Feature CSV output path");

    CLI::App* fit = app.add_subcommand("fit-pca", "Fit z-score + PCA on a corpus");
    add_corpus(fit);
    add_out(fit, "PCA model JSON output path");
    fit->add_option("--reduced", reduced_path, "Optional reduced-matrix CSV output");

    CLI::App* prioritize = app.add_subcommand("prioritize", "Produce a test ordering");
    add_corpus(prioritize);
    add_out(prioritize, "Ordering JSON output path");
    prioritize->add_option("--strategy", strategy, "ga | greedy | random");
    prioritize->add_option("--seed", opts.seed, "RNG seed");
    prioritize->add_option("--cache", cache_dir, "Distance-matrix cache directory");
    add_ga_params(prioritize);

    CLI::App* evaluate = app.add_subcommand("evaluate", "Score an ordering against labels");
    add_corpus(evaluate);
    evaluate->add_option("--order", order_path, "Ordering JSON file")->required();
    add_out(evaluate, "Evaluation output path");
    evaluate->add_option("--format", opts.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* exp = app.add_subcommand("experiment", "Run the comparative experiment");
    add_corpus(exp);
    exp->add_option("--strategies", strategies_csv, "Comma-separated strategies");
    exp->add_option("--repetitions", experiment.repetitions, "Runs per strategy");
    exp->add_option("--seed", opts.seed, "Base seed; run seeds are base + index");
    exp->add_option("--out-dir", out_dir, "Directory for report artifacts");
    add_ga_params(exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (synth->parsed()) {
            return cmd_synth(bench, opts.out_path, manifest_path);
        }
        if (extract->parsed()) {
            return cmd_extract(opts);
        }
        if (fit->parsed()) {
            return cmd_fit_pca(opts, reduced_path);
        }
        if (prioritize->parsed()) {
            return cmd_prioritize(opts, strategy, ga, cache_dir);
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(opts, order_path);
        }
        if (exp->parsed()) {
            experiment.ga = ga;
            experiment.strategies.clear();
            std::stringstream ss(strategies_csv);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) {
                    experiment.strategies.push_back(item);
                }
            }
            return cmd_experiment(opts, experiment, out_dir);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
