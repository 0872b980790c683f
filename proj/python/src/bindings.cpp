#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "axiomlab/constructions.hpp"
#include "axiomlab/harness.hpp"
#include "axiomlab/kmeans.hpp"
#include "axiomlab/separation.hpp"
#include "axiomlab/transforms.hpp"

namespace py = pybind11;
using namespace axiomlab;

namespace {

using Clusters = std::vector<std::vector<std::size_t>>;

py::dict result_dict(const ClusteringResult& r) {
    py::dict d;
    d["clusters"] = r.partition.clusters();
    d["centers"] = r.centers;
    d["q"] = r.objective;
    d["iterations"] = r.iterations;
    d["explained_variance"] = r.explained_variance;
    d["converged"] = r.converged;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "k-means and the clustering axioms: objectives, transforms and property suites.";

    py::register_exception<EnumerationCapExceeded>(m, "EnumerationCapExceeded", PyExc_OverflowError);

    m.def("objective_q", [](const Eigen::MatrixXd& x, const Clusters& c) {
        return objective_q(Dataset(x), Partition(c));
    }, py::arg("points"), py::arg("clusters"));

    m.def("kmeans", [](const Eigen::MatrixXd& x, std::size_t k, std::size_t restarts, std::uint64_t seed,
                       const std::string& seeding) {
        KMeansConfig cfg;
        cfg.k = k;
        cfg.restarts = restarts;
        cfg.rng_seed = seed;
        cfg.seeding = parse_seeding(seeding);
        return result_dict(kmeans(Dataset(x), cfg));
    }, py::arg("points"), py::arg("k"), py::arg("restarts") = 10, py::arg("seed") = 0,
       py::arg("seeding") = "plus-plus");

    m.def("kmeans_ideal", [](const Eigen::MatrixXd& x, std::size_t k) {
        return result_dict(kmeans_ideal(Dataset(x), k));
    }, py::arg("points"), py::arg("k"));

    m.def("is_local_min", [](const Eigen::MatrixXd& x, const Clusters& c) {
        return is_local_min(Dataset(x), Partition(c)).local_min;
    }, py::arg("points"), py::arg("clusters"));

    m.def("enumerate_partitions", [](std::size_t n, std::optional<std::size_t> k) {
        std::vector<Clusters> out;
        for (const auto& p : enumerate_partitions(n, k)) out.push_back(p.clusters());
        return out;
    }, py::arg("n"), py::arg("k") = py::none());

    m.def("embeddability_check", [](const Eigen::MatrixXd& d) {
        const auto e = embeddability_check(DistanceMatrix(d));
        py::dict out;
        out["eigenvalues"] = e.eigenvalues;
        out["embeddable"] = e.embeddable;
        out["imaginary_axes"] = e.imaginary_axes();
        return out;
    }, py::arg("distances"));

    m.def("distance_matrix", [](const Eigen::MatrixXd& x) { return distance_matrix(Dataset(x)).matrix(); },
          py::arg("points"));

    m.def("is_gamma_transform", [](const Eigen::MatrixXd& d, const Eigen::MatrixXd& d2, const Clusters& c) {
        return is_gamma_transform(DistanceMatrix(d), DistanceMatrix(d2), Partition(c)).valid;
    }, py::arg("before"), py::arg("after"), py::arg("clusters"));

    m.def("centric_transform", [](const Eigen::MatrixXd& x, const Clusters& c, std::size_t cluster, double lambda) {
        return centric_transform(Dataset(x), Partition(c), cluster, lambda).points();
    }, py::arg("points"), py::arg("clusters"), py::arg("cluster"), py::arg("lam"));

    m.def("certify", [](const Eigen::MatrixXd& x, const Clusters& c) {
        return certify(Dataset(x), Partition(c)).to_json();
    }, py::arg("points"), py::arg("clusters"), "Separation certificate as a JSON string.");

    m.def("krich_line", [](const std::vector<std::size_t>& sizes) {
        auto inst = krich_line(sizes);
        return py::make_tuple(inst.dataset.points(), inst.target.clusters());
    }, py::arg("sizes"));

    m.def("threshold_clustering", [](const Eigen::MatrixXd& x) {
        return threshold_clustering(Dataset(x)).clusters();
    }, py::arg("points"));

    m.def("motion_gap_bound", &motion_gap_bound, py::arg("n1"), py::arg("r1"), py::arg("n2"), py::arg("r2"));

    m.def("seeding_success", [](double p, std::size_t k, const std::string& model) {
        const auto s = seeding_success(p, k, model == "plus-plus" ? SeedingModel::plus_plus : SeedingModel::random);
        return py::make_tuple(s.q, s.restarts);
    }, py::arg("p"), py::arg("k"), py::arg("model") = "random");

    m.def("suite_names", &suite_names);

    m.def("run_suite", [](const std::string& name, std::uint64_t seed, std::size_t trials) {
        ExperimentConfig cfg;
        cfg.seed = seed;
        cfg.trials = trials;
        return render(run_suite(name, cfg), ReportFormat::json);
    }, py::arg("name"), py::arg("seed") = 42, py::arg("trials") = 0, "Suite report as a JSON string.");

    m.def("reproduce_table3", [](std::uint64_t seed) {
        ExperimentConfig cfg;
        cfg.seed = seed;
        return render(reproduce_table3(cfg), ReportFormat::json);
    }, py::arg("seed") = 42, "Variance-explained grid as a JSON string.");
}
