// arclust: attraction-repulsion clustering pipelines.
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arclust/embed.hpp"
#include "arclust/flatcluster.hpp"
#include "arclust/hier.hpp"
#include "arclust/io.hpp"
#include "arclust/kernel.hpp"
#include "arclust/metrics.hpp"
#include "arclust/plot.hpp"
#include "arclust/rng.hpp"
#include "arclust/synth.hpp"
#include "arclust/tune.hpp"

namespace {

using namespace arclust;

struct DataFlags {
    std::string input;
    std::string id_col;
    std::string x_cols;  // comma separated
    std::string s_cols;
    std::string class_col;
    std::string codification = "raw";
    std::string lat_col, lon_col;
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

void add_data_flags(CLI::App* cmd, DataFlags& f, bool require_input = true) {
    auto* opt = cmd->add_option("--input", f.input, "input CSV file");
    if (require_input) opt->required();
    cmd->add_option("--id-col", f.id_col, "record identifier column");
    cmd->add_option("--x-cols", f.x_cols, "comma-separated unprotected columns");
    cmd->add_option("--s-cols", f.s_cols, "comma-separated numeric protected columns");
    cmd->add_option("--class-col", f.class_col, "categorical protected column");
    cmd->add_option("--codification", f.codification,
                    "signed | one_hot | counts | raw (default raw)");
    cmd->add_option("--lat-col", f.lat_col, "latitude column (degrees)");
    cmd->add_option("--lon-col", f.lon_col, "longitude column (degrees)");
}

io::LoadedDataset load_data(const DataFlags& f) {
    io::ColumnRoles roles;
    roles.id_col = f.id_col;
    roles.x_cols = split_commas(f.x_cols);
    roles.s_cols = split_commas(f.s_cols);
    roles.class_col = f.class_col;
    roles.codification.scheme = cod_scheme_from_name(f.codification);
    roles.lat_col = f.lat_col;
    roles.lon_col = f.lon_col;
    return io::load_csv(f.input, roles);
}

struct FamilyFlags {
    std::string family;
    double u = 0.0, v = 0.0, w = 0.0;
    std::string u_matrix, v_matrix;  // matrix strings, rows ';'-separated
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f, bool required = true) {
    auto* opt = cmd->add_option("--family", f.family, "delta1 | delta2 | delta3 | delta4");
    if (required) opt->required();
    cmd->add_option("--u", f.u, "u parameter (delta2/delta3/delta4)");
    cmd->add_option("--v", f.v, "v parameter (delta2/delta4)");
    cmd->add_option("--w", f.w, "w locality parameter (delta4)");
    cmd->add_option("--U", f.u_matrix, "U matrix, rows ';'-separated (delta1)");
    cmd->add_option("--V", f.v_matrix, "V matrix, rows ';'-separated (delta1/delta4)");
}

Eigen::MatrixXd parse_matrix_flag(const std::string& text, Eigen::Index p,
                                  const std::string& name) {
    if (text.empty()) return Eigen::MatrixXd::Zero(p, p);
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string row;
    while (std::getline(is, row, ';')) {
        std::istringstream rs(row);
        std::vector<double> vals;
        double v;
        while (rs >> v) vals.push_back(v);
        if (!vals.empty()) rows.push_back(vals);
    }
    if (rows.empty()) throw std::runtime_error(name + ": empty matrix");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::runtime_error(name + ": ragged matrix");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    if (m.rows() != p || m.cols() != p)
        throw std::runtime_error(name + ": expected a " + std::to_string(p) + "x" +
                                 std::to_string(p) + " matrix");
    return m;
}

DissimParams resolve_params(const FamilyFlags& f, Eigen::Index p) {
    Family fam = family_from_name(f.family);
    switch (fam) {
        case Family::delta1:
            return DissimParams::additive(parse_matrix_flag(f.u_matrix, p, "--U"),
                                          parse_matrix_flag(f.v_matrix, p, "--V"));
        case Family::delta2: return DissimParams::multiplicative(f.u, f.v);
        case Family::delta3: return DissimParams::subtractive(f.u);
        case Family::delta4:
            return DissimParams::local(parse_matrix_flag(f.v_matrix, p, "--V"), f.u, f.v,
                                       f.w);
    }
    throw std::logic_error("unreachable");
}

struct KernelFlags {
    std::string kernel;
    double gamma = 1.0, coef = 0.0;
    int degree = 2;
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& f) {
    cmd->add_option("--kernel", f.kernel,
                    "linear | polynomial | rbf | squared_coords (optional)");
    cmd->add_option("--gamma", f.gamma, "rbf gamma");
    cmd->add_option("--degree", f.degree, "polynomial degree");
    cmd->add_option("--coef", f.coef, "polynomial coefficient");
}

std::optional<KernelSpec> resolve_kernel(const KernelFlags& f) {
    if (f.kernel.empty()) return std::nullopt;
    if (f.kernel == "linear") return KernelSpec::linear();
    if (f.kernel == "polynomial") return KernelSpec::polynomial(f.degree, f.coef);
    if (f.kernel == "rbf") return KernelSpec::rbf(f.gamma);
    if (f.kernel == "squared_coords") return KernelSpec::squared_coords();
    throw std::runtime_error("unknown kernel: " + f.kernel);
}

// base distance: geodesic > kernel-induced > Euclidean on x
Eigen::MatrixXd resolve_base(const io::LoadedDataset& ld, bool geodesic,
                             const std::optional<KernelSpec>& kernel) {
    if (geodesic) {
        if (ld.lat.empty() || ld.lon.empty())
            throw std::runtime_error("--geodesic requires --lat-col and --lon-col");
        return io::geodesic_matrix(ld.lat, ld.lon).values;
    }
    if (kernel) return d_kappa_matrix(ld.data.x(), *kernel);
    return euclidean_matrix(ld.data.x()).values;
}

std::optional<std::vector<int>> derive_class_of(const io::LoadedDataset& ld) {
    const Eigen::MatrixXd& c = ld.class_counts;
    if (c.size() == 0) return std::nullopt;
    std::vector<int> out(c.rows());
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        int arg = -1;
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            if (c(i, j) == 1.0 && arg < 0)
                arg = static_cast<int>(j);
            else if (c(i, j) != 0.0)
                return std::nullopt;  // genuine count data has no single class
        }
        if (arg < 0) return std::nullopt;
        out[i] = arg;
    }
    return out;
}

std::string replace_extension(const std::string& path, const std::string& ext) {
    auto dot = path.find_last_of('.');
    auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ext;
    return path.substr(0, dot) + ext;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

MetricsReport build_report(const Eigen::MatrixXd& base_d, const Eigen::MatrixXd& coords,
                           const std::vector<int>& labels, int k,
                           const io::LoadedDataset& ld) {
    MetricsReport r;
    SilhouetteResult sil = silhouette(base_d, labels, k);
    r.avg_silhouette = sil.average;
    auto class_of = derive_class_of(ld);
    if (class_of)
        r.per_class_silhouette = per_class_silhouette(
            sil.values, *class_of, static_cast<int>(ld.class_counts.cols()));
    if (ld.class_counts.size() > 0) {
        r.unfairness = unfairness(labels, k, ld.class_counts);
        r.per_cluster_proportions = cluster_proportions(labels, k, ld.class_counts);
        if (class_of && ld.class_counts.cols() == 2)
            r.balance = balance(labels, k, *class_of);
    }
    Objectives obj = partition_objectives(coords, labels, k);
    r.kmeans_ss = obj.kmeans_ss;
    r.kmedian_sum = obj.kmedian_sum;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"attraction-repulsion clustering for fairness"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file");
    bool print_config = false;
    app.add_flag("--print-config", print_config,
                 "print the fully-resolved configuration and continue");

    // ---- synth
    auto* synth_cmd = app.add_subcommand("synth", "generate benchmark datasets");
    std::string synth_kind, synth_out = "synth.csv";
    std::uint64_t synth_seed = 0;
    bool synth_seed_set = false;
    RingOptions ring_opts;
    synth_cmd->add_option("kind", synth_kind, "gaussians | rings")->required();
    synth_cmd->add_option("--seed", synth_seed, "generator seed")
        ->each([&](const std::string&) { synth_seed_set = true; });
    synth_cmd->add_option("--out", synth_out, "output CSV path");
    std::string ring_radii;
    synth_cmd->add_option("--ring-total", ring_opts.total, "total ring points");
    synth_cmd->add_option("--ring-circle-fraction", ring_opts.circle_fraction,
                          "fraction of circle-class points");
    synth_cmd->add_option("--ring-width", ring_opts.width, "annulus width");
    synth_cmd->add_option("--ring-radii", ring_radii, "inner,middle,outer radii");

    // ---- dissim
    auto* dissim_cmd = app.add_subcommand("dissim", "compute a dissimilarity matrix");
    DataFlags dissim_data;
    FamilyFlags dissim_family;
    KernelFlags dissim_kernel;
    bool dissim_geodesic = false, dissim_prepare = false;
    std::string dissim_out = "dissim.csv";
    add_data_flags(dissim_cmd, dissim_data);
    add_family_flags(dissim_cmd, dissim_family);
    add_kernel_flags(dissim_cmd, dissim_kernel);
    dissim_cmd->add_flag("--geodesic", dissim_geodesic,
                         "use haversine distances from lat/lon as the base distance");
    dissim_cmd->add_flag("--prepare", dissim_prepare,
                         "apply the positivity shift and square-root step");
    dissim_cmd->add_option("--out", dissim_out, "output path (.csv or .ardm)");

    // ---- embed
    auto* embed_cmd = app.add_subcommand("embed", "classical MDS embedding");
    DataFlags embed_data;
    FamilyFlags embed_family;
    KernelFlags embed_kernel;
    bool embed_geodesic = false;
    int embed_dprime = 2;
    std::string embed_matrix, embed_out = "coords.csv";
    add_data_flags(embed_cmd, embed_data, /*require_input=*/false);
    add_family_flags(embed_cmd, embed_family, /*required=*/false);
    add_kernel_flags(embed_cmd, embed_kernel);
    embed_cmd->add_flag("--geodesic", embed_geodesic, "embed haversine distances");
    embed_cmd->add_option("--matrix", embed_matrix,
                          "embed a saved matrix (.csv or .ardm) instead of a dataset");
    embed_cmd->add_option("--dprime", embed_dprime, "embedding dimension (default 2)");
    embed_cmd->add_option("--out", embed_out, "coordinates CSV (JSON sidecar alongside)");

    // ---- cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "cluster a dataset and score it");
    DataFlags cluster_data;
    FamilyFlags cluster_family;
    KernelFlags cluster_kernel;
    bool cluster_geodesic = false;
    std::string cluster_method = "kmeans_mds", cluster_outdir = ".";
    int cluster_k = 2, cluster_dprime = 0, cluster_restarts = 20;
    std::uint64_t cluster_seed = 0;
    bool cluster_seed_set = false;
    add_data_flags(cluster_cmd, cluster_data);
    add_family_flags(cluster_cmd, cluster_family);
    add_kernel_flags(cluster_cmd, cluster_kernel);
    cluster_cmd->add_flag("--geodesic", cluster_geodesic, "perturb haversine distances");
    cluster_cmd
        ->add_option("--method", cluster_method,
                     "kmeans_mds | kmedoids_mds | complete | average | single | charged_ward")
        ->required();
    cluster_cmd->add_option("--k", cluster_k, "number of clusters")->required();
    cluster_cmd->add_option("--dprime", cluster_dprime,
                            "MDS dimension (default min(d, n-1))");
    cluster_cmd->add_option("--restarts", cluster_restarts, "k-means restarts");
    cluster_cmd->add_option("--seed", cluster_seed, "RNG seed")
        ->each([&](const std::string&) { cluster_seed_set = true; });
    cluster_cmd->add_option("--out-dir", cluster_outdir, "output directory");

    // ---- metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "score an existing partition");
    DataFlags metrics_data;
    std::string metrics_partition, metrics_out = "metrics.json";
    bool metrics_geodesic = false;
    add_data_flags(metrics_cmd, metrics_data);
    metrics_cmd->add_option("--partition", metrics_partition, "partition JSON")->required();
    metrics_cmd->add_flag("--geodesic", metrics_geodesic,
                          "score silhouettes on haversine distances");
    metrics_cmd->add_option("--out", metrics_out, "metrics JSON path");

    // ---- tune
    auto* tune_cmd = app.add_subcommand("tune", "grid-search tuning");
    DataFlags tune_data;
    KernelFlags tune_kernel;
    std::string tune_grid, tune_outdir = ".";
    bool tune_geodesic = false;
    int tune_k = 0;
    double tune_tau = -2.0;  // sentinel: keep the grid file's value
    std::uint64_t tune_seed = 0;
    bool tune_seed_set = false;
    int tune_threads = 0;
    add_data_flags(tune_cmd, tune_data);
    add_kernel_flags(tune_cmd, tune_kernel);
    tune_cmd->add_option("--grid", tune_grid, "grid specification file")->required();
    tune_cmd->add_flag("--geodesic", tune_geodesic, "perturb haversine distances");
    tune_cmd->add_option("--k", tune_k, "override the grid file's k");
    tune_cmd->add_option("--tau", tune_tau, "override the grid file's silhouette floor");
    tune_cmd->add_option("--seed", tune_seed, "override the grid file's seed")
        ->each([&](const std::string&) { tune_seed_set = true; });
    tune_cmd->add_option("--threads", tune_threads, "worker threads (0 = auto)");
    tune_cmd->add_option("--out-dir", tune_outdir, "output directory");

    // ---- plot
    auto* plot_cmd = app.add_subcommand("plot", "SVG scatter of a clustered dataset");
    DataFlags plot_data;
    std::string plot_coords, plot_partition, plot_out = "plot.svg";
    add_data_flags(plot_cmd, plot_data);
    plot_cmd->add_option("--coords", plot_coords,
                         "coordinates CSV (default: x columns, or lon/lat)");
    plot_cmd->add_option("--partition", plot_partition, "partition JSON")->required();
    plot_cmd->add_option("--out", plot_out, "SVG output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }
    if (print_config) std::cout << app.config_to_str(true, true);

    try {
        if (*synth_cmd) {
            if (!synth_seed_set)
                throw std::runtime_error("synth requires --seed (randomized path)");
            if (!ring_radii.empty()) {
                auto parts = split_commas(ring_radii);
                if (parts.size() != 3)
                    throw std::runtime_error("--ring-radii expects inner,middle,outer");
                ring_opts.inner_radius = std::stod(parts[0]);
                ring_opts.middle_radius = std::stod(parts[1]);
                ring_opts.outer_radius = std::stod(parts[2]);
            }
            Dataset data = synth_kind == "gaussians" ? make_gaussians(synth_seed)
                           : synth_kind == "rings"
                               ? make_rings(synth_seed, ring_opts)
                               : throw std::runtime_error("unknown kind: " + synth_kind);
            io::save_dataset_csv(synth_out, data);
            std::cout << "wrote " << synth_out << " (" << data.n() << " rows)\n";
        } else if (*dissim_cmd) {
            io::LoadedDataset ld = load_data(dissim_data);
            DissimParams params = resolve_params(dissim_family, ld.data.p());
            auto kernel = resolve_kernel(dissim_kernel);
            DissimMatrix m;
            if (dissim_geodesic || kernel) {
                Eigen::MatrixXd base = resolve_base(ld, dissim_geodesic, kernel);
                m = dissim_matrix_with_base(base, ld.data.s(), params);
            } else {
                m = dissim_matrix(ld.data, params);
            }
            if (dissim_prepare) m = prepare_for_mds(m);
            if (ends_with(dissim_out, ".ardm"))
                io::save_dissim_ardm(dissim_out, m);
            else
                io::save_dissim_csv(dissim_out, m, ld.data.ids());
            std::cout << "wrote " << dissim_out << " (n=" << m.n()
                      << ", shift=" << io::format_double(m.shift_applied)
                      << ", sqrt=" << (m.sqrt_applied ? "yes" : "no") << ")\n";
        } else if (*embed_cmd) {
            DissimMatrix m;
            std::vector<std::string> ids;
            if (!embed_matrix.empty()) {
                m = ends_with(embed_matrix, ".ardm") ? io::load_dissim_ardm(embed_matrix)
                                                     : io::load_dissim_csv(embed_matrix);
            } else {
                if (embed_data.input.empty())
                    throw std::runtime_error("embed needs --input or --matrix");
                io::LoadedDataset ld = load_data(embed_data);
                ids = ld.data.ids();
                if (embed_geodesic) {
                    m = io::geodesic_matrix(ld.lat, ld.lon);
                } else {
                    if (embed_family.family.empty())
                        throw std::runtime_error(
                            "embed needs --family (or --matrix / --geodesic)");
                    DissimParams params = resolve_params(embed_family, ld.data.p());
                    auto kernel = resolve_kernel(embed_kernel);
                    if (kernel)
                        m = kernel_dissim_matrix(ld.data, params, *kernel);
                    else
                        m = dissim_matrix(ld.data, params);
                    m = prepare_for_mds(m);
                }
            }
            Embedding e = classical_mds(m, embed_dprime);
            io::save_embedding_csv(embed_out, e, ids);
            io::save_embedding_json(replace_extension(embed_out, ".json"), e);
            std::cout << "wrote " << embed_out << " (effective dim " << e.effective_dim
                      << ", negative mass " << io::format_double(e.negative_mass) << ")\n";
        } else if (*cluster_cmd) {
            io::LoadedDataset ld = load_data(cluster_data);
            DissimParams params = resolve_params(cluster_family, ld.data.p());
            auto kernel = resolve_kernel(cluster_kernel);
            Method method = method_from_name(cluster_method);
            const int n = static_cast<int>(ld.data.n());
            bool randomized =
                method == Method::kmeans_mds || method == Method::kmedoids_mds;
            if (randomized && !cluster_seed_set)
                throw std::runtime_error("this method requires --seed (randomized path)");

            Eigen::MatrixXd base = resolve_base(ld, cluster_geodesic, kernel);
            std::vector<int> labels;
            double objective = 0.0;
            Eigen::MatrixXd coords;  // what objectives are evaluated on
            if (method == Method::kmeans_mds || method == Method::kmedoids_mds) {
                DissimMatrix delta = dissim_matrix_with_base(base, ld.data.s(), params);
                int dprime = cluster_dprime > 0
                                 ? cluster_dprime
                                 : static_cast<int>(std::min<Eigen::Index>(ld.data.d(), n - 1));
                Embedding emb = classical_mds(prepare_for_mds(delta), dprime);
                coords = emb.coords;
                if (method == Method::kmeans_mds) {
                    KMeansResult km = kmeans(coords, cluster_k, cluster_restarts, cluster_seed);
                    labels = km.partition.labels;
                    objective = km.within_ss;
                } else {
                    KMedoidsResult km =
                        kmedoids(coords, cluster_k, cluster_seed, cluster_restarts);
                    labels = km.partition.labels;
                    objective = km.objective;
                }
            } else if (method == Method::charged_ward) {
                if (cluster_geodesic || kernel)
                    throw std::runtime_error(
                        "charged_ward clusters coordinate data; geodesic/kernel bases "
                        "do not apply");
                Dendrogram dend = charged_ward(ld.data, params);
                io::save_dendrogram_json(cluster_outdir + "/dendrogram.json", dend);
                io::save_dendrogram_csv(cluster_outdir + "/dendrogram.csv", dend);
                labels = cut(dend, cluster_k).labels;
                coords = ld.data.x();
            } else {
                DissimMatrix delta = dissim_matrix_with_base(base, ld.data.s(), params);
                double min_off = delta.values(0, 1);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        if (i != j) min_off = std::min(min_off, delta.values(i, j));
                if (min_off <= 0.0) {
                    double shift = std::abs(min_off) + default_shift_epsilon(delta.values);
                    delta.values.array() += shift;
                    delta.shift_applied = shift;
                }
                LinkageMethod lm = method == Method::complete ? LinkageMethod::complete
                                   : method == Method::average ? LinkageMethod::average
                                                               : LinkageMethod::single;
                Dendrogram dend = linkage(delta, lm);
                io::save_dendrogram_json(cluster_outdir + "/dendrogram.json", dend);
                io::save_dendrogram_csv(cluster_outdir + "/dendrogram.csv", dend);
                labels = cut(dend, cluster_k).labels;
                coords = ld.data.x();
            }

            Partition part = ld.class_counts.size() > 0
                                 ? Partition::from_labels(labels, cluster_k, ld.class_counts)
                                 : Partition::from_labels(labels, cluster_k);
            MetricsReport report = build_report(base, coords, labels, cluster_k, ld);
            if (objective == 0.0) objective = report.kmeans_ss;

            io::save_partition_json(cluster_outdir + "/partition.json", part,
                                    cluster_method, cluster_seed, objective, params);
            io::save_metrics_json(cluster_outdir + "/metrics.json", report);
            std::ostringstream summary;
            summary << "method,params,k,avg_silhouette,balance,unfairness,kmeans_ss,"
                       "kmedian_sum\n"
                    << io::metrics_csv_row(cluster_method, cluster_family.family, cluster_k,
                                           report)
                    << "\n";
            io::write_text_atomic(cluster_outdir + "/summary.csv", summary.str());
            std::cout << "wrote " << cluster_outdir << "/partition.json, metrics.json, "
                      << "summary.csv (unfairness "
                      << io::format_double(report.unfairness) << ", silhouette "
                      << io::format_double(report.avg_silhouette) << ")\n";
        } else if (*metrics_cmd) {
            io::LoadedDataset ld = load_data(metrics_data);
            Partition part = io::load_partition_json(metrics_partition);
            if (static_cast<Eigen::Index>(part.labels.size()) != ld.data.n())
                throw std::runtime_error("partition size does not match dataset");
            Eigen::MatrixXd base = resolve_base(ld, metrics_geodesic, std::nullopt);
            MetricsReport report =
                build_report(base, ld.data.x(), part.labels, part.k, ld);
            io::save_metrics_json(metrics_out, report);
            std::cout << "wrote " << metrics_out << "\n";
        } else if (*tune_cmd) {
            io::LoadedDataset ld = load_data(tune_data);
            io::GridFile grid = io::load_grid_file(tune_grid, ld.data.p());
            TuneOptions opts;
            opts.methods = grid.methods;
            opts.grid = grid.params;
            opts.tau = tune_tau >= -1.0 ? tune_tau : grid.tau;
            opts.seed = tune_seed_set ? tune_seed : grid.seed;
            opts.kernel = resolve_kernel(tune_kernel);
            opts.threads = tune_threads;
            if (tune_geodesic) opts.base_distance = resolve_base(ld, true, std::nullopt);
            if (ld.class_counts.size() > 0) opts.class_counts = ld.class_counts;

            std::vector<int> ks = tune_k > 0 ? std::vector<int>{tune_k} : grid.ks;
            std::vector<TuneResult> runs;
            for (int k : ks) {
                opts.k = k;
                runs.push_back(tune(ld.data, opts));
            }
            io::save_gridcells_csv(tune_outdir + "/gridcells.csv", runs, grid.param_desc);
            io::save_tune_results_json(tune_outdir + "/tuneresult.json", runs,
                                       grid.param_desc);
            std::cout << "wrote " << tune_outdir << "/gridcells.csv, tuneresult.json\n";
            for (const TuneResult& result : runs)
                for (const MethodResult& mr : result.methods) {
                    std::cout << "  k=" << result.k << " " << method_name(mr.method)
                              << ": ";
                    if (mr.best_index)
                        std::cout << "best " << grid.param_desc[*mr.best_index]
                                  << " (unfairness "
                                  << io::format_double(mr.cells[*mr.best_index].unfairness)
                                  << ", silhouette "
                                  << io::format_double(
                                         mr.cells[*mr.best_index].avg_silhouette)
                                  << ")\n";
                    else
                        std::cout << "infeasible (no cell met tau)\n";
                }
        } else if (*plot_cmd) {
            io::LoadedDataset ld = load_data(plot_data);
            Partition part = io::load_partition_json(plot_partition);
            Eigen::MatrixXd coords;
            if (!plot_coords.empty()) {
                coords = io::load_coords_csv(plot_coords, nullptr);
            } else if (!ld.lon.empty()) {
                coords.resize(ld.data.n(), 2);
                for (Eigen::Index i = 0; i < ld.data.n(); ++i) {
                    coords(i, 0) = ld.lon[i];
                    coords(i, 1) = ld.lat[i];
                }
            } else {
                coords = ld.data.x();
            }
            auto class_of = derive_class_of(ld);
            std::vector<int> classes =
                class_of ? *class_of : std::vector<int>(ld.data.n(), 0);
            int q = class_of ? static_cast<int>(ld.class_counts.cols()) : 1;
            PlotOptions popts;
            popts.class_names = ld.class_names;
            plot_scatter(coords, part.labels, part.k, classes, q, plot_out, popts);
            std::cout << "wrote " << plot_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
