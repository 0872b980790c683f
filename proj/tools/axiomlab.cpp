#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axiomlab/constructions.hpp"
#include "axiomlab/harness.hpp"
#include "axiomlab/io.hpp"
#include "axiomlab/kmeans.hpp"
#include "axiomlab/separation.hpp"
#include "axiomlab/transforms.hpp"
#include "json.hpp"

using namespace axiomlab;

namespace {

struct Common {
    std::uint64_t seed = 42;
    std::size_t k = 2;
    std::size_t restarts = 10;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c, bool with_k) {
    cmd->add_option("--seed", c.seed, "master RNG seed")->capture_default_str();
    if (with_k) cmd->add_option("--k", c.k, "number of clusters")->capture_default_str();
    cmd->add_option("--restarts", c.restarts, "k-means restarts")->capture_default_str();
    cmd->add_option("--out", c.out, "output file (stdout when omitted)");
    cmd->add_option("--format", c.format, "json, csv or markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown", "md"}))
        ->capture_default_str();
}

std::string dataset_csv(const Dataset& x) {
    std::ostringstream os;
    write_dataset_csv(os, x);
    return os.str();
}

std::string clustering_output(const ClusteringResult& r, const std::string& format, std::uint64_t seed) {
    if (format == "csv") {
        std::ostringstream os;
        os << "point,cluster\n";
        for (std::size_t i = 0; i < r.partition.size(); ++i) os << i << ',' << r.partition.cluster_of(i) << '\n';
        return os.str();
    }
    auto j = nlohmann::json::parse(r.to_json());
    j["seed"] = seed;
    if (format == "json") return j.dump(2) + "\n";
    std::ostringstream os;
    os << "Master seed: " << seed << "\n\n| cluster | size | center |\n|---|---|---|\n";
    for (std::size_t c = 0; c < r.partition.cluster_count(); ++c) {
        os << "| " << c << " | " << r.partition.cluster(c).size() << " | " << j["centers"][c].dump() << " |\n";
    }
    os << "\nQ = " << r.objective << ", explained variance = " << r.explained_variance << ", iterations = " << r.iterations
       << "\n";
    return os.str();
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stod(item));
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"axiomlab: k-means against the clustering axioms"};
    app.require_subcommand(1);

    // cluster
    Common cl;
    std::string cl_input, cl_seeding = "plus-plus";
    std::size_t cl_max_iter = 300;
    bool cl_ideal = false;
    auto* cluster = app.add_subcommand("cluster", "run k-means on a dataset CSV");
    add_common(cluster, cl, true);
    cluster->add_option("--input", cl_input, "dataset CSV")->required();
    cluster->add_option("--seeding", cl_seeding, "uniform-random or plus-plus")->capture_default_str();
    cluster->add_option("--max-iterations", cl_max_iter)->capture_default_str();
    cluster->add_flag("--ideal", cl_ideal, "exhaustive global minimum instead of Lloyd");

    // transform
    Common tr;
    std::string tr_input, tr_partition, tr_kind, tr_lambda, tr_vector, tr_record, tr_distances;
    std::size_t tr_cluster = 0;
    double tr_alpha = 1.0;
    auto* transform = app.add_subcommand("transform", "apply a consistency transform");
    add_common(transform, tr, false);
    transform->add_option("--kind", tr_kind, "scale, centric, motion, inner-proportional")->required();
    transform->add_option("--input", tr_input, "dataset CSV");
    transform->add_option("--distances", tr_distances, "distance CSV (scale only)");
    transform->add_option("--partition", tr_partition, "partition JSON");
    transform->add_option("--cluster", tr_cluster);
    transform->add_option("--alpha", tr_alpha);
    transform->add_option("--lambda", tr_lambda, "one value, or comma list per cluster");
    transform->add_option("--vector", tr_vector, "comma separated motion vector");
    transform->add_option("--record", tr_record, "write the TransformRecord JSON here");

    // certify
    Common ce;
    std::string ce_input, ce_partition;
    auto* certify_cmd = app.add_subcommand("certify", "separation certificate for a clustered dataset");
    add_common(certify_cmd, ce, false);
    certify_cmd->add_option("--input", ce_input, "dataset CSV")->required();
    certify_cmd->add_option("--partition", ce_partition, "partition JSON")->required();

    // construct
    Common co;
    std::string co_what, co_sizes = "3,2,2", co_partition_out, co_distances, co_partition;
    std::size_t co_points = 1000, co_dim = 2;
    bool co_rotated = false;
    auto* construct = app.add_subcommand("construct", "generate a dataset and its target partition");
    add_common(construct, co, false);
    construct->add_option("what", co_what, "krich, rotated, mixture, fixtures, table4, embed")
        ->required()
        ->check(CLI::IsMember({"krich", "rotated", "mixture", "fixtures", "table4", "embed"}));
    construct->add_option("--sizes", co_sizes, "cluster sizes for krich")->capture_default_str();
    construct->add_option("--points", co_points, "points per segment for rotated")->capture_default_str();
    construct->add_flag("--rotated", co_rotated, "rotate the segments towards the x axis");
    construct->add_option("--partition-out", co_partition_out, "write the target partition JSON here");
    construct->add_option("--distances", co_distances, "distance CSV for embed");
    construct->add_option("--partition", co_partition, "partition JSON for embed");
    construct->add_option("--dim", co_dim, "embedding dimension")->capture_default_str();

    // suite
    Common su;
    std::string su_name;
    std::size_t su_trials = 0;
    bool su_runtime = false;
    auto* suite = app.add_subcommand("suite", "run an axiom property suite (or 'all')");
    add_common(suite, su, false);
    suite->add_option("name", su_name)->required();
    suite->add_option("--trials", su_trials, "override the suite's trial count");
    suite->add_flag("--runtime", su_runtime, "include wall-clock runtime in the report");

    // report
    Common re;
    std::string re_what;
    auto* report = app.add_subcommand("report", "reproduce and render a results table");
    add_common(report, re, false);
    report->add_option("what", re_what, "table3")->required()->check(CLI::IsMember({"table3"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cluster) {
            const Dataset x = load_dataset(cl_input);
            ClusteringResult r = [&] {
                if (cl_ideal) return kmeans_ideal(x, cl.k);
                KMeansConfig config;
                config.k = cl.k;
                config.restarts = cl.restarts;
                config.rng_seed = cl.seed;
                config.max_iterations = cl_max_iter;
                config.seeding = parse_seeding(cl_seeding);
                return kmeans(x, config);
            }();
            write_text(cl.out, clustering_output(r, cl.format, cl.seed));
        } else if (*transform) {
            TransformRecord record;
            record.kind = parse_transform_kind(tr_kind);
            if (record.kind == TransformKind::scale) {
                record.alpha = tr_alpha;
                record.validate();
                if (!tr_distances.empty()) {
                    std::ostringstream os;
                    write_distance_csv(os, scale(load_distance(tr_distances), tr_alpha));
                    write_text(tr.out, os.str());
                } else {
                    write_text(tr.out, dataset_csv(scale(load_dataset(tr_input), tr_alpha)));
                }
            } else {
                if (tr_input.empty() || tr_partition.empty()) {
                    throw std::invalid_argument("--input and --partition are required for this transform");
                }
                const Dataset x = load_dataset(tr_input);
                const Partition p = load_partition(tr_partition);
                record.lambdas = parse_list(tr_lambda);
                record.vector = parse_list(tr_vector);
                Dataset y = x;
                if (record.kind == TransformKind::centric) {
                    record.cluster = tr_cluster;
                    record.validate();
                    y = centric_transform(x, p, tr_cluster, record.lambdas.front());
                } else if (record.kind == TransformKind::motion) {
                    record.cluster = tr_cluster;
                    record.validate();
                    const Eigen::RowVectorXd v =
                        Eigen::Map<const Eigen::RowVectorXd>(record.vector.data(), static_cast<Eigen::Index>(record.vector.size()));
                    const auto moved = motion_transform(x, p, tr_cluster, v);
                    if (!moved.legal()) std::cerr << "warning: motion is not legal (centers approach or balls overlap)\n";
                    y = moved.dataset;
                } else if (record.kind == TransformKind::inner_proportional) {
                    record.validate();
                    y = inner_proportional_transform(x, p, record.lambdas);
                } else {
                    throw std::invalid_argument("transform kind " + tr_kind + " is not available from the CLI");
                }
                const bool valid = is_gamma_transform(distance_matrix(x), distance_matrix(y), p).valid;
                std::cerr << "gamma-transform: " << (valid ? "yes" : "no") << '\n';
                write_text(tr.out, dataset_csv(y));
            }
            if (!tr_record.empty()) write_text(tr_record, record.to_json() + "\n");
        } else if (*certify_cmd) {
            const auto c = certify(load_dataset(ce_input), load_partition(ce_partition));
            auto j = nlohmann::json::parse(c.to_json());
            j["seed"] = ce.seed;
            write_text(ce.out, j.dump(2) + "\n");
        } else if (*construct) {
            std::optional<Partition> target;
            std::string body;
            if (co_what == "krich") {
                std::vector<std::size_t> sizes;
                for (double s : parse_list(co_sizes)) sizes.push_back(static_cast<std::size_t>(s));
                auto inst = krich_line(sizes);
                body = dataset_csv(inst.dataset);
                target = inst.target;
            } else if (co_what == "rotated") {
                auto pair = rotated_segments_pair(co_points, co.seed);
                body = dataset_csv(co_rotated ? pair.rotated : pair.original);
                target = pair.partition;
            } else if (co_what == "mixture") {
                std::mt19937_64 rng(co.seed);
                const auto components = default_mixture();
                body = dataset_csv(gaussian_mixture(components, rng));
                target = mixture_partition(components);
            } else if (co_what == "fixtures") {
                std::ostringstream os;
                write_distance_csv(os, fixture_tables().distances);
                body = os.str();
            } else if (co_what == "table4") {
                body = dataset_csv(table4_points());
            } else {
                const auto d = load_distance(co_distances);
                const auto p = load_partition(co_partition);
                body = dataset_csv(embed_partition(d, p, co_dim));
                target = p;
            }
            write_text(co.out, body);
            if (target && !co_partition_out.empty()) write_text(co_partition_out, partition_to_json(*target) + "\n");
        } else if (*suite) {
            ExperimentConfig config;
            config.seed = su.seed;
            config.trials = su_trials;
            config.restarts = su.restarts;
            std::vector<SuiteReport> reports;
            if (su_name == "all") {
                for (const auto& name : suite_names()) reports.push_back(run_suite(name, config));
            } else {
                reports.push_back(run_suite(su_name, config));
            }
            write_text(su.out, render(reports, parse_report_format(su.format), su_runtime));
            for (const auto& r : reports) {
                if (!r.passed()) return 1;
            }
        } else if (*report) {
            ExperimentConfig config;
            config.seed = re.seed;
            config.restarts = re.restarts;
            const auto table = reproduce_table3(config);
            write_text(re.out, render(table, parse_report_format(re.format)));
            return table.passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "axiomlab: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
