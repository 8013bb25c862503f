#include "arclust/tune.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "arclust/embed.hpp"
#include "arclust/flatcluster.hpp"
#include "arclust/hier.hpp"
#include "arclust/metrics.hpp"
#include "arclust/rng.hpp"

namespace arclust {

const char* method_name(Method m) {
    switch (m) {
        case Method::kmeans_mds: return "kmeans_mds";
        case Method::kmedoids_mds: return "kmedoids_mds";
        case Method::complete: return "complete";
        case Method::average: return "average";
        case Method::single: return "single";
        case Method::charged_ward: return "charged_ward";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "kmeans_mds") return Method::kmeans_mds;
    if (name == "kmedoids_mds") return Method::kmedoids_mds;
    if (name == "complete") return Method::complete;
    if (name == "average") return Method::average;
    if (name == "single") return Method::single;
    if (name == "charged_ward") return Method::charged_ward;
    throw std::invalid_argument("unknown clustering method: " + name);
}

std::optional<std::size_t> select_best(const std::vector<GridCell>& cells, double tau) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const GridCell& c = cells[i];
        if (!c.ok || c.avg_silhouette < tau) continue;
        if (!best || c.unfairness < cells[*best].unfairness) best = i;
    }
    return best;
}

Eigen::MatrixXd derive_class_counts(const Eigen::MatrixXd& s) {
    if ((s.array() >= 0.0).all()) return s;  // counts / one-hot rows
    bool pm1 = s.cols() == 1;
    if (pm1)
        for (Eigen::Index i = 0; i < s.rows(); ++i)
            if (s(i, 0) != 1.0 && s(i, 0) != -1.0) {
                pm1 = false;
                break;
            }
    if (pm1) {
        Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(s.rows(), 2);
        for (Eigen::Index i = 0; i < s.rows(); ++i) counts(i, s(i, 0) > 0.0 ? 0 : 1) = 1.0;
        return counts;
    }
    throw std::invalid_argument(
        "cannot derive class counts from real-valued protected attributes; supply "
        "class_counts explicitly");
}

namespace {

struct CellOutcome {
    std::vector<int> labels;
    bool ok = false;
    std::string error;
};

// evaluation shared by all methods for one parameter set
struct ParamContext {
    DissimMatrix delta;
    bool embedded = false;
    Eigen::MatrixXd coords;
    std::string embed_error;
};

}  // namespace

TuneResult tune(const Dataset& data, const TuneOptions& options) {
    if (options.grid.empty()) throw std::invalid_argument("tune: empty parameter grid");
    if (options.tau < -1.0 || options.tau > 1.0)
        throw std::invalid_argument("tune: tau must lie in [-1, 1]");
    if (options.methods.empty()) throw std::invalid_argument("tune: no methods given");
    const int n = static_cast<int>(data.n());
    if (options.k < 2 || options.k > n)
        throw std::invalid_argument("tune: k must be in 2..n");

    // base distance: explicit > kernel-induced > Euclidean on x
    Eigen::MatrixXd base;
    if (options.base_distance.size() > 0) {
        if (options.base_distance.rows() != n || options.base_distance.cols() != n)
            throw std::invalid_argument("tune: base_distance must be n x n");
        base = options.base_distance;
    } else if (options.kernel) {
        base = d_kappa_matrix(data.x(), *options.kernel);
    } else {
        base = euclidean_matrix(data.x()).values;
    }

    Eigen::MatrixXd counts = options.class_counts.size() > 0 ? options.class_counts
                                                             : derive_class_counts(data.s());
    if (counts.rows() != n) throw std::invalid_argument("tune: class_counts row mismatch");

    bool needs_embedding = false;
    bool needs_coords = false;
    for (Method m : options.methods) {
        if (m == Method::kmeans_mds || m == Method::kmedoids_mds) needs_embedding = true;
        if (m == Method::charged_ward) needs_coords = true;
    }
    if (needs_coords && (options.base_distance.size() > 0 || options.kernel))
        throw std::invalid_argument(
            "tune: charged_ward clusters coordinate data and cannot run on an external "
            "or kernel-induced distance matrix");

    int d_prime = options.d_prime;
    if (d_prime <= 0) d_prime = static_cast<int>(std::min<Eigen::Index>(data.d(), n - 1));
    d_prime = std::min(d_prime, n - 1);

    // each parameter cell is a pure function of its inputs; evaluate them
    // concurrently and assemble in grid order
    const std::size_t n_params = options.grid.size();
    std::vector<ParamContext> contexts(n_params);
    std::vector<std::string> param_errors(n_params);

    auto eval_param = [&](std::size_t pi) {
        try {
            options.grid[pi].validate(data.p());
            ParamContext& ctx = contexts[pi];
            ctx.delta = dissim_matrix_with_base(base, data.s(), options.grid[pi]);
            if (needs_embedding) {
                try {
                    Embedding emb = classical_mds(prepare_for_mds(ctx.delta), d_prime);
                    ctx.coords = emb.coords;
                    ctx.embedded = true;
                } catch (const std::exception& e) {
                    ctx.embed_error = e.what();
                }
            }
        } catch (const std::exception& e) {
            param_errors[pi] = e.what();
        }
    };

    unsigned n_threads = options.threads > 0
                             ? static_cast<unsigned>(options.threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n_params));
    if (n_threads <= 1) {
        for (std::size_t pi = 0; pi < n_params; ++pi) eval_param(pi);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    std::size_t pi = next.fetch_add(1);
                    if (pi >= n_params) return;
                    eval_param(pi);
                }
            });
        for (auto& th : pool) th.join();
    }

    TuneResult result;
    result.k = options.k;
    result.tau = options.tau;
    result.seed = options.seed;

    for (Method method : options.methods) {
        MethodResult mr;
        mr.method = method;
        mr.cells.reserve(n_params);
        for (std::size_t pi = 0; pi < n_params; ++pi) {
            GridCell cell;
            cell.method = method;
            cell.param_index = pi;
            cell.k = options.k;
            cell.seed = options.seed;
            if (!param_errors[pi].empty()) {
                cell.error = param_errors[pi];
                mr.cells.push_back(std::move(cell));
                continue;
            }
            const ParamContext& ctx = contexts[pi];
            try {
                std::vector<int> labels;
                switch (method) {
                    case Method::kmeans_mds:
                    case Method::kmedoids_mds: {
                        if (!ctx.embedded) throw std::runtime_error(ctx.embed_error);
                        if (method == Method::kmeans_mds)
                            labels = kmeans(ctx.coords, options.k, options.kmeans_restarts,
                                            derive_seed(options.seed, pi))
                                         .partition.labels;
                        else
                            labels = kmedoids(ctx.coords, options.k,
                                              derive_seed(options.seed, pi))
                                         .partition.labels;
                        break;
                    }
                    case Method::complete:
                    case Method::average:
                    case Method::single: {
                        // the perturbed matrix is used directly, after the
                        // procedure's positivity shift when entries dip <= 0
                        DissimMatrix dm = ctx.delta;
                        double min_off = dm.values(0, 1);
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < n; ++j)
                                if (i != j) min_off = std::min(min_off, dm.values(i, j));
                        if (min_off <= 0.0) {
                            double shift =
                                std::abs(min_off) + default_shift_epsilon(dm.values);
                            dm.values.array() += shift;
                            dm.shift_applied = shift;
                        }
                        LinkageMethod lm = method == Method::complete
                                               ? LinkageMethod::complete
                                               : (method == Method::average
                                                      ? LinkageMethod::average
                                                      : LinkageMethod::single);
                        labels = cut(linkage(dm, lm), options.k).labels;
                        break;
                    }
                    case Method::charged_ward: {
                        labels = cut(charged_ward(data, options.grid[pi]), options.k).labels;
                        break;
                    }
                }
                cell.unfairness = unfairness(labels, options.k, counts);
                cell.avg_silhouette = silhouette(base, labels, options.k).average;
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            mr.cells.push_back(std::move(cell));
        }
        mr.best_index = select_best(mr.cells, options.tau);
        mr.infeasible = !mr.best_index.has_value();
        result.methods.push_back(std::move(mr));
    }
    return result;
}

}  // namespace arclust
