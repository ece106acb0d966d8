#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "votemap/approval.hpp"
#include "votemap/cultures.hpp"
#include "votemap/distances.hpp"
#include "votemap/embedding.hpp"
#include "votemap/io.hpp"
#include "votemap/rules.hpp"
#include "votemap/subelections.hpp"

// Command line front end.  Stages talk to each other through files only:
//   generate      config -> one election file per dataset row
//   distmatrix    election files -> distance CSV
//   embed         distance CSV -> coordinate CSV (+ quality CSV)
//   render        coordinate CSV -> SVG
//   rules         election files -> rule-evaluation CSV
//   subelections  config -> culture similarity CSV
//   approval-stats config -> per-election approval statistics CSV
// Exit codes: 0 success, 2 configuration or input error, 3 exceeded budget.

namespace {

using namespace votemap;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

struct CommonOptions {
    std::string config_path;
    std::string dir = ".";
    std::string out;
    std::string metric;
    std::string embedding;
    bool approval = false;
    bool has_seed = false;
    std::uint64_t seed = 0;
    long long budget = -1;
};

ExperimentConfig load_config(const CommonOptions& opt) {
    ExperimentConfig config = parse_experiment_config(read_file(opt.config_path));
    if (opt.has_seed) config.seed = opt.seed;
    if (!opt.metric.empty()) config.metric = opt.metric;
    if (!opt.embedding.empty()) config.embedding = opt.embedding;
    return config;
}

std::string election_path(const std::string& dir, const std::string& label,
                          bool approval) {
    return (std::filesystem::path(dir) / (label + (approval ? ".app" : ".votes")))
        .string();
}

bool approval_metric(const std::string& name) {
    return name == "approvalwise" || name == "iso-hamming";
}

ElectionMetric metric_of(const std::string& name) {
    if (name == "swap") return ElectionMetric::Swap;
    if (name == "spearman") return ElectionMetric::Spearman;
    if (name == "discrete") return ElectionMetric::Discrete;
    if (name == "emd-positionwise") return ElectionMetric::EmdPositionwise;
    if (name == "l1-positionwise") return ElectionMetric::L1Positionwise;
    if (name == "pairwise") return ElectionMetric::Pairwise;
    if (name == "bordawise") return ElectionMetric::Bordawise;
    throw ParseError("unknown metric '" + name + "'");
}

int run_generate(const CommonOptions& opt) {
    const ExperimentConfig config = load_config(opt);
    for (const auto& row : resolve_dataset(config)) {
        Rng rng(row.seed);
        const std::string path = election_path(opt.dir, row.label, opt.approval);
        if (opt.approval) {
            const ApprovalCultureSpec spec = parse_approval_culture(row.culture);
            write_file(path,
                       write_approval_election(sample_approval(spec, row.m, row.n, rng)));
        } else {
            const CultureSpec spec = parse_culture(row.culture);
            write_file(path, write_election(sample_election(spec, row.m, row.n, rng)));
        }
    }
    return 0;
}

int run_distmatrix(const CommonOptions& opt) {
    const ExperimentConfig config = load_config(opt);
    const auto rows = resolve_dataset(config);
    std::vector<std::string> labels;
    for (const auto& row : rows) labels.push_back(row.label);

    DistanceMatrix dm;
    const bool approval = opt.approval || approval_metric(config.metric);
    if (approval) {
        std::vector<ApprovalElection> dataset;
        for (const auto& row : rows)
            dataset.push_back(parse_approval_election(
                read_file(election_path(opt.dir, row.label, true))));
        dm.labels = labels;
        const int k = static_cast<int>(dataset.size());
        dm.d.assign(k, std::vector<double>(k, 0.0));
        const int cap = opt.budget > 0 ? static_cast<int>(opt.budget) : 8;
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                const double value =
                    config.metric == "iso-hamming"
                        ? static_cast<double>(
                              isomorphic_hamming_distance(dataset[i], dataset[j], cap))
                        : approvalwise_distance(dataset[i], dataset[j]);
                dm.d[i][j] = dm.d[j][i] = value;
            }
        }
    } else {
        std::vector<OrdinalElection> dataset;
        for (const auto& row : rows)
            dataset.push_back(
                parse_election(read_file(election_path(opt.dir, row.label, false))));
        MetricOptions options;
        const ElectionMetric metric = metric_of(config.metric);
        if (opt.budget > 0) {
            options.swap_node_budget = opt.budget;
            options.brute_force_cap = static_cast<int>(opt.budget);
            options.pairwise_cap = static_cast<int>(opt.budget);
        }
        dm = distance_matrix(dataset, metric, options, labels);
    }

    const std::string out = !opt.out.empty()       ? opt.out
                            : !config.distances_path.empty() ? config.distances_path
                                                             : "distances.csv";
    write_file(out, write_distance_csv(dm));
    return 0;
}

struct EmbedOptions {
    std::string in;
    std::string report;
    int restarts = 8;
    int iterations = 300;
    double epsilon = 0.0;
};

int run_embed(const CommonOptions& opt, const EmbedOptions& eopt) {
    std::string algorithm = opt.embedding.empty() ? "kk" : opt.embedding;
    std::string in = eopt.in;
    std::string out = opt.out;
    if (!opt.config_path.empty()) {
        const ExperimentConfig config = load_config(opt);
        algorithm = config.embedding;
        if (in.empty()) in = config.distances_path;
        if (out.empty()) out = config.coordinates_path;
    }
    if (in.empty()) throw ParseError("embed needs --in or a config with distances");
    if (out.empty()) out = "coordinates.csv";

    const DistanceMatrix dm = parse_distance_csv(read_file(in));
    Rng rng(opt.has_seed ? opt.seed : 0);
    Embedding embedding;
    if (algorithm == "kk") {
        embedding = embed_kamada_kawai(dm, eopt.restarts, rng);
    } else if (algorithm == "mds") {
        embedding = embed_mds_smacof(dm, eopt.iterations);
    } else if (algorithm == "fr") {
        embedding = embed_fruchterman_reingold(dm, eopt.iterations, rng);
    } else {
        throw ParseError("unknown embedding '" + algorithm + "'");
    }
    write_file(out, write_coordinates_csv(embedding));

    if (!eopt.report.empty()) {
        const MonotonicityReport mono = monotonicity(embedding, eopt.epsilon);
        const DistortionReport dist = distortion(embedding);
        write_file(eopt.report,
                   write_quality_csv(embedding.labels, mono.per_item, dist.per_item));
    }
    return 0;
}

struct RenderOptions {
    std::string in;
    bool no_labels = false;
};

int run_render(const CommonOptions& opt, const RenderOptions& ropt) {
    std::string in = ropt.in;
    std::string out = opt.out;
    MapStyle style;
    style.draw_labels = !ropt.no_labels;
    if (!opt.config_path.empty()) {
        const ExperimentConfig config = load_config(opt);
        if (in.empty()) in = config.coordinates_path;
        if (out.empty()) out = config.svg_path;
        for (const auto& row : resolve_dataset(config))
            if (!row.color.empty()) style.colors[row.label] = row.color;
    }
    if (in.empty()) throw ParseError("render needs --in or a config with coordinates");
    if (out.empty()) out = "map.svg";
    write_file(out, render_svg_map(parse_coordinates_csv(read_file(in)), style));
    return 0;
}

struct RulesOptions {
    std::string rules = "plurality,borda,copeland";
    int committee_size = 3;
};

double evaluate_rule(const OrdinalElection& e, const std::string& rule, int k,
                     long long budget) {
    const int cap = budget > 0 ? static_cast<int>(budget) : 8;
    auto best = [](const ScoreReport& report) {
        return report.scores[report.winners.front()];
    };
    if (rule == "plurality") return best(plurality_scores(e));
    if (rule == "borda") return best(borda_scores(e));
    if (rule == "copeland") return best(copeland_scores(e));
    if (rule == "dodgson") return best(dodgson_winner(e, cap));
    if (rule == "cc") return exact_committee(e, k, CommitteeRule::CC).second;
    if (rule == "hb") return exact_committee(e, k, CommitteeRule::HB).second;
    if (rule == "seq-cc") return cc_score(e, seq_cc(e, k));
    if (rule == "seq-hb") return hb_score(e, seq_hb(e, k));
    if (rule == "removal-cc") return cc_score(e, removal_cc(e, k));
    if (rule == "removal-hb") return hb_score(e, removal_hb(e, k));
    if (rule == "banzhaf-cc") return cc_score(e, banzhaf_cc(e, k));
    if (rule == "ranging-cc") return cc_score(e, ranging_cc(e, k));
    throw ParseError("unknown rule '" + rule + "'");
}

int run_rules(const CommonOptions& opt, const RulesOptions& ropt) {
    const ExperimentConfig config = load_config(opt);
    std::vector<std::string> rule_names;
    {
        std::istringstream stream(ropt.rules);
        std::string name;
        while (std::getline(stream, name, ','))
            if (!name.empty()) rule_names.push_back(name);
    }
    if (rule_names.empty()) throw ParseError("no rules requested");

    std::ostringstream csv;
    csv << "election_label,rule,score,runtime_seconds\n";
    for (const auto& row : resolve_dataset(config)) {
        const OrdinalElection e =
            parse_election(read_file(election_path(opt.dir, row.label, false)));
        for (const auto& rule : rule_names) {
            const auto started = std::chrono::steady_clock::now();
            const double score = evaluate_rule(e, rule, ropt.committee_size, opt.budget);
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - started;
            csv << row.label << ',' << rule << ',' << format_double(score) << ','
                << format_double(elapsed.count()) << "\n";
        }
    }
    write_file(opt.out.empty() ? "rules.csv" : opt.out, csv.str());
    return 0;
}

int run_subelections(const CommonOptions& opt, int trials_override) {
    const ExperimentConfig config = load_config(opt);
    std::vector<std::string> labels;
    std::vector<CultureSpec> specs;
    for (const auto& entry : config.entries) {
        labels.push_back(entry.label);
        specs.push_back(parse_culture(entry.culture));
    }
    const int trials = trials_override > 0 ? trials_override : config.trials;
    Rng rng(config.seed);
    const SimilarityMatrix sim =
        culture_similarity_matrix(specs, config.m, config.n, trials, rng);
    write_file(opt.out.empty() ? "similarity.csv" : opt.out,
               write_similarity_csv(labels, sim.mean, sim.stddev));
    return 0;
}

int run_approval_stats(const CommonOptions& opt, int committee_size) {
    const ExperimentConfig config = load_config(opt);
    std::ostringstream csv;
    csv << "label,max_approval_score,mean_approvals,cohesiveness_level,"
           "cohesive_voters\n";
    for (const auto& row : resolve_dataset(config)) {
        Rng rng(row.seed);
        const ApprovalCultureSpec spec = parse_approval_culture(row.culture);
        const ApprovalElection e = sample_approval(spec, row.m, row.n, rng);
        double mean_size = 0.0;
        for (const auto& vote : e.votes) mean_size += vote.approved.size();
        if (e.n() > 0) mean_size /= e.n();
        csv << row.label << ',' << format_double(max_approval_score(e)) << ','
            << format_double(mean_size) << ',' << cohesiveness_level(e, committee_size)
            << ',' << format_double(voters_in_1cohesive(e, committee_size)) << "\n";
    }
    write_file(opt.out.empty() ? "approval_stats.csv" : opt.out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"map-of-elections toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    EmbedOptions eopt;
    RenderOptions render_opt;
    RulesOptions rules_opt;
    int trials = 0;
    int stats_k = 3;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* config = cmd->add_option("--config", opt.config_path, "experiment config");
        if (needs_config) config->required();
        cmd->add_option("--seed", opt.seed, "seed override")
            ->each([&](const std::string&) { opt.has_seed = true; });
        cmd->add_option("--budget", opt.budget, "search budget override");
        cmd->add_option("--metric", opt.metric, "distance metric override");
        cmd->add_option("--embedding", opt.embedding, "embedding algorithm override");
        cmd->add_option("--out", opt.out, "output file");
        cmd->add_option("--dir", opt.dir, "election file directory");
    };

    auto* generate = app.add_subcommand("generate", "sample elections from a config");
    add_common(generate, true);
    generate->add_flag("--approval", opt.approval, "sample approval elections");

    auto* distmatrix =
        app.add_subcommand("distmatrix", "pairwise distances of generated elections");
    add_common(distmatrix, true);
    distmatrix->add_flag("--approval", opt.approval, "read approval elections");

    auto* embed = app.add_subcommand("embed", "embed a distance matrix into the plane");
    add_common(embed, false);
    embed->add_option("--in", eopt.in, "distance csv");
    embed->add_option("--report", eopt.report, "quality report csv");
    embed->add_option("--restarts", eopt.restarts, "kk restarts");
    embed->add_option("--iterations", eopt.iterations, "fr/mds iterations");
    embed->add_option("--epsilon", eopt.epsilon, "monotonicity tolerance");

    auto* render = app.add_subcommand("render", "draw a coordinate csv as svg");
    add_common(render, false);
    render->add_option("--in", render_opt.in, "coordinate csv");
    render->add_flag("--no-labels", render_opt.no_labels, "suppress text labels");

    auto* rules = app.add_subcommand("rules", "evaluate voting rules per election");
    add_common(rules, true);
    rules->add_option("--rules", rules_opt.rules, "comma-separated rule names");
    rules->add_option("--k", rules_opt.committee_size, "committee size");

    auto* subelections =
        app.add_subcommand("subelections", "culture similarity by common subelections");
    add_common(subelections, true);
    subelections->add_option("--trials", trials, "sampled election pairs per cell");

    auto* approval_stats =
        app.add_subcommand("approval-stats", "approval culture statistics");
    add_common(approval_stats, true);
    approval_stats->add_option("--k", stats_k, "committee size for cohesiveness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) return run_generate(opt);
        if (distmatrix->parsed()) return run_distmatrix(opt);
        if (embed->parsed()) return run_embed(opt, eopt);
        if (render->parsed()) return run_render(opt, render_opt);
        if (rules->parsed()) return run_rules(opt, rules_opt);
        if (subelections->parsed()) return run_subelections(opt, trials);
        if (approval_stats->parsed()) return run_approval_stats(opt, stats_k);
    } catch (const votemap::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
