#ifndef ARCLUST_TUNE_HPP
#define ARCLUST_TUNE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arclust/kernel.hpp"
#include "arclust/types.hpp"

namespace arclust {

enum class Method { kmeans_mds, kmedoids_mds, complete, average, single, charged_ward };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

/// One evaluated (method, parameter) cell of the tuning grid.
struct GridCell {
    Method method = Method::kmeans_mds;
    std::size_t param_index = 0;
    int k = 0;
    double unfairness = 0.0;
    double avg_silhouette = 0.0;  // on the unperturbed distance matrix D
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
};

struct MethodResult {
    Method method = Method::kmeans_mds;
    std::vector<GridCell> cells;  // grid order
    std::optional<std::size_t> best_index;
    bool infeasible = false;  // no cell met the silhouette floor
};

struct TuneResult {
    std::vector<MethodResult> methods;  // in requested method order
    int k = 0;
    double tau = 0.0;
    std::uint64_t seed = 0;
};

struct TuneOptions {
    std::vector<Method> methods;
    std::vector<DissimParams> grid;
    int k = 2;
    double tau = 0.0;
    std::uint64_t seed = 0;
    int d_prime = 0;  // 0: min(d, n-1)
    int kmeans_restarts = 20;
    std::optional<KernelSpec> kernel;
    /// Base distance matrix: used both as the silhouette reference D and as
    /// the distance the families perturb. Empty: Euclidean on x (or d_kappa
    /// when a kernel is set).
    Eigen::MatrixXd base_distance;
    /// Per-record protected-class counts (n x q) for the unfairness index.
    /// Empty: derived from s (counts/one-hot rows as-is; +/-1 split into two
    /// indicator columns).
    Eigen::MatrixXd class_counts;
    int threads = 0;  // 0: hardware concurrency
};

/// Feasible-best selection: among cells with avg_silhouette >= tau, the one
/// with lowest unfairness, ties by grid order. nullopt when none qualify.
std::optional<std::size_t> select_best(const std::vector<GridCell>& cells, double tau);

/// Grid search over methods x parameters: build the perturbed dissimilarity,
/// embed for the *_mds methods, cluster, score unfairness and
/// silhouette-on-D, then pick the per-method best.
TuneResult tune(const Dataset& data, const TuneOptions& options);

/// Class counts derived from protected attributes (see TuneOptions).
Eigen::MatrixXd derive_class_counts(const Eigen::MatrixXd& s);

}  // namespace arclust

#endif
