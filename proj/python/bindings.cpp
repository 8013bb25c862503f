#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arclust/dissim.hpp"
#include "arclust/embed.hpp"
#include "arclust/flatcluster.hpp"
#include "arclust/hier.hpp"
#include "arclust/io.hpp"
#include "arclust/kernel.hpp"
#include "arclust/metrics.hpp"
#include "arclust/plot.hpp"
#include "arclust/synth.hpp"
#include "arclust/tune.hpp"
#include "arclust/types.hpp"

namespace py = pybind11;
using namespace arclust;

namespace {

Dataset make_dataset(const Eigen::MatrixXd& x, const Eigen::MatrixXd& s,
                     const std::vector<std::string>& ids) {
    return Dataset(x, s, ids);
}

py::dict embedding_dict(const Embedding& e) {
    py::dict d;
    d["coords"] = e.coords;
    d["eigenvalues"] = e.eigenvalues;
    d["negative_mass"] = e.negative_mass;
    d["requested_dim"] = e.requested_dim;
    d["effective_dim"] = e.effective_dim;
    return d;
}

py::dict dendrogram_dict(const Dendrogram& d) {
    py::list merges;
    for (const Merge& m : d.merges)
        merges.append(py::make_tuple(m.a, m.b, m.height, m.new_size));
    py::dict out;
    out["merges"] = merges;
    out["n_leaves"] = d.n_leaves;
    out["shift_applied"] = d.shift_applied;
    return out;
}

Dendrogram dendrogram_from_dict(const py::dict& d) {
    Dendrogram out;
    out.n_leaves = d["n_leaves"].cast<int>();
    out.shift_applied = d["shift_applied"].cast<double>();
    for (auto item : d["merges"].cast<py::list>()) {
        auto t = item.cast<py::tuple>();
        out.merges.push_back(Merge{t[0].cast<int>(), t[1].cast<int>(),
                                   t[2].cast<double>(), t[3].cast<int>()});
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_arclust, m) {
    m.doc() = "attraction-repulsion clustering for fairness";

    py::enum_<Family>(m, "Family")
        .value("delta1", Family::delta1)
        .value("delta2", Family::delta2)
        .value("delta3", Family::delta3)
        .value("delta4", Family::delta4);

    py::class_<DissimParams>(m, "DissimParams")
        .def_static("additive", &DissimParams::additive, py::arg("u_matrix"),
                    py::arg("v_matrix"))
        .def_static("multiplicative", &DissimParams::multiplicative, py::arg("u"),
                    py::arg("v"))
        .def_static("subtractive", &DissimParams::subtractive, py::arg("u"))
        .def_static("local", &DissimParams::local, py::arg("v_matrix"), py::arg("u"),
                    py::arg("v"), py::arg("w"))
        .def_readonly("family", &DissimParams::family)
        .def_readonly("u", &DissimParams::u)
        .def_readonly("v", &DissimParams::v)
        .def_readonly("w", &DissimParams::w)
        .def_readonly("u_matrix", &DissimParams::u_matrix)
        .def_readonly("v_matrix", &DissimParams::v_matrix);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&make_dataset), py::arg("x"), py::arg("s"),
             py::arg("ids") = std::vector<std::string>{})
        .def_property_readonly("x", &Dataset::x)
        .def_property_readonly("s", &Dataset::s)
        .def_property_readonly("ids", &Dataset::ids)
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("d", &Dataset::d)
        .def_property_readonly("p", &Dataset::p);

    py::class_<DissimMatrix>(m, "DissimMatrix")
        .def_readonly("values", &DissimMatrix::values)
        .def_readonly("shift_applied", &DissimMatrix::shift_applied)
        .def_readonly("sqrt_applied", &DissimMatrix::sqrt_applied);

    py::class_<KernelSpec>(m, "KernelSpec")
        .def_static("linear", &KernelSpec::linear)
        .def_static("polynomial", &KernelSpec::polynomial, py::arg("degree"),
                    py::arg("coef"))
        .def_static("rbf", &KernelSpec::rbf, py::arg("gamma"))
        .def_static("squared_coords", &KernelSpec::squared_coords)
        .def("name", &KernelSpec::name);

    py::class_<Partition>(m, "Partition")
        .def_readonly("labels", &Partition::labels)
        .def_readonly("k", &Partition::k)
        .def_readonly("proportions", &Partition::proportions);

    // core
    m.def("encode_classes",
          [](const std::vector<std::string>& labels, const std::string& scheme, int q) {
              return encode_classes(labels, Codification{cod_scheme_from_name(scheme), q});
          },
          py::arg("labels"), py::arg("scheme"), py::arg("q") = 0);
    m.def("build_interaction",
          [](const Eigen::MatrixXd& v_tilde, double v0) {
              return build_interaction(v_tilde, v0).v();
          },
          py::arg("v_tilde"), py::arg("v0"));

    // dissimilarities
    m.def("delta1", &delta1, py::arg("x1"), py::arg("s1"), py::arg("x2"), py::arg("s2"),
          py::arg("u_matrix"), py::arg("v_matrix"));
    m.def("delta2", &delta2, py::arg("x1"), py::arg("s1"), py::arg("x2"), py::arg("s2"),
          py::arg("u"), py::arg("v"));
    m.def("delta3", &delta3, py::arg("x1"), py::arg("s1"), py::arg("x2"), py::arg("s2"),
          py::arg("u"));
    m.def("delta4", &delta4, py::arg("x1"), py::arg("s1"), py::arg("x2"), py::arg("s2"),
          py::arg("v_matrix"), py::arg("u"), py::arg("v"), py::arg("w"));
    m.def("dissim_matrix", &dissim_matrix, py::arg("data"), py::arg("params"));
    m.def("dissim_matrix_with_base", &dissim_matrix_with_base, py::arg("base_dist"),
          py::arg("s"), py::arg("params"));
    m.def("euclidean_matrix",
          [](const Eigen::MatrixXd& x) { return euclidean_matrix(x); }, py::arg("x"));
    m.def("prepare_for_mds",
          [](const DissimMatrix& mx, double epsilon) {
              return epsilon > 0 ? prepare_for_mds(mx, epsilon) : prepare_for_mds(mx);
          },
          py::arg("m"), py::arg("epsilon") = -1.0);

    // embedding
    m.def("classical_mds",
          [](const DissimMatrix& mx, int d_prime) {
              return embedding_dict(classical_mds(mx, d_prime));
          },
          py::arg("m"), py::arg("d_prime"));

    // hierarchical
    m.def("linkage",
          [](const DissimMatrix& mx, const std::string& method) {
              return dendrogram_dict(linkage(mx, linkage_from_name(method)));
          },
          py::arg("m"), py::arg("method"));
    m.def("charged_ward",
          [](const Dataset& data, const DissimParams& params) {
              return dendrogram_dict(charged_ward(data, params));
          },
          py::arg("data"), py::arg("params"));
    m.def("cut",
          [](const py::dict& dend, int k) { return cut(dendrogram_from_dict(dend), k); },
          py::arg("dendrogram"), py::arg("k"));

    // flat clustering
    m.def("kmeans",
          [](const Eigen::MatrixXd& coords, int k, int restarts, std::uint64_t seed) {
              KMeansResult r = kmeans(coords, k, restarts, seed);
              py::dict d;
              d["labels"] = r.partition.labels;
              d["centers"] = r.centers;
              d["within_ss"] = r.within_ss;
              d["iterations"] = r.iterations;
              d["seed"] = r.seed;
              return d;
          },
          py::arg("coords"), py::arg("k"), py::arg("restarts") = 20, py::arg("seed") = 0);
    m.def("kmedoids",
          [](const Eigen::MatrixXd& coords, int k, std::uint64_t seed) {
              KMedoidsResult r = kmedoids(coords, k, seed);
              py::dict d;
              d["labels"] = r.partition.labels;
              d["medoids"] = r.medoids;
              d["objective"] = r.objective;
              return d;
          },
          py::arg("coords"), py::arg("k"), py::arg("seed") = 0);

    // kernels
    m.def("d_kappa", &d_kappa, py::arg("x"), py::arg("y"), py::arg("kernel"));
    m.def("d_kappa_matrix", &d_kappa_matrix, py::arg("x"), py::arg("kernel"));
    m.def("kernel_dissim_matrix", &kernel_dissim_matrix, py::arg("data"),
          py::arg("params"), py::arg("kernel"));

    // metrics
    m.def("silhouette",
          [](const Eigen::MatrixXd& distances, const std::vector<int>& labels, int k) {
              SilhouetteResult r = silhouette(distances, labels, k);
              return py::make_tuple(r.values, r.average);
          },
          py::arg("distances"), py::arg("labels"), py::arg("k"));
    m.def("per_class_silhouette", &per_class_silhouette, py::arg("values"),
          py::arg("class_of"), py::arg("q"));
    m.def("balance", &balance, py::arg("labels"), py::arg("k"), py::arg("binary_class"));
    m.def("unfairness", &unfairness, py::arg("labels"), py::arg("k"),
          py::arg("class_counts"));
    m.def("partition_objectives",
          [](const Eigen::MatrixXd& coords, const std::vector<int>& labels, int k) {
              Objectives o = partition_objectives(coords, labels, k);
              return py::make_tuple(o.kmeans_ss, o.kmedian_sum);
          },
          py::arg("coords"), py::arg("labels"), py::arg("k"));
    m.def("cluster_proportions", &cluster_proportions, py::arg("labels"), py::arg("k"),
          py::arg("class_counts"));

    // tuner
    m.def("tune",
          [](const Dataset& data, const std::vector<std::string>& methods,
             const std::vector<DissimParams>& grid, int k, double tau,
             std::uint64_t seed, std::optional<KernelSpec> kernel,
             std::optional<Eigen::MatrixXd> class_counts, int threads) {
              TuneOptions opts;
              for (const auto& name : methods)
                  opts.methods.push_back(method_from_name(name));
              opts.grid = grid;
              opts.k = k;
              opts.tau = tau;
              opts.seed = seed;
              opts.kernel = kernel;
              if (class_counts) opts.class_counts = *class_counts;
              opts.threads = threads;
              TuneResult r = tune(data, opts);
              py::list out;
              for (const MethodResult& mr : r.methods) {
                  py::dict dm;
                  dm["method"] = method_name(mr.method);
                  dm["infeasible"] = mr.infeasible;
                  dm["best_index"] = mr.best_index
                                         ? py::cast(*mr.best_index)
                                         : py::object(py::none());
                  py::list cells;
                  for (const GridCell& c : mr.cells) {
                      py::dict dc;
                      dc["param_index"] = c.param_index;
                      dc["ok"] = c.ok;
                      dc["unfairness"] = c.unfairness;
                      dc["avg_silhouette"] = c.avg_silhouette;
                      dc["error"] = c.error;
                      cells.append(dc);
                  }
                  dm["cells"] = cells;
                  out.append(dm);
              }
              return out;
          },
          py::arg("data"), py::arg("methods"), py::arg("grid"), py::arg("k"),
          py::arg("tau") = 0.0, py::arg("seed") = 0,
          py::arg("kernel") = std::nullopt, py::arg("class_counts") = std::nullopt,
          py::arg("threads") = 0);

    // io & synthetic data
    m.def("geodesic_matrix",
          [](const std::vector<double>& lat, const std::vector<double>& lon) {
              return io::geodesic_matrix(lat, lon);
          },
          py::arg("lat"), py::arg("lon"));
    m.def("make_gaussians", &make_gaussians, py::arg("seed"));
    m.def("make_rings",
          [](std::uint64_t seed) { return make_rings(seed); }, py::arg("seed"));
    m.def("scatter_svg",
          [](const Eigen::MatrixXd& coords, const std::vector<int>& labels, int k,
             const std::vector<int>& class_of, int q) {
              return scatter_svg(coords, labels, k, class_of, q);
          },
          py::arg("coords"), py::arg("labels"), py::arg("k"), py::arg("class_of"),
          py::arg("q"));
}
