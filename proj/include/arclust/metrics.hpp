#ifndef ARCLUST_METRICS_HPP
#define ARCLUST_METRICS_HPP

#include <Eigen/Core>
#include <vector>

#include "arclust/types.hpp"

namespace arclust {

struct SilhouetteResult {
    Eigen::VectorXd values;  // per point, in [-1, 1]
    double average = 0.0;
};

/// s(i) = (b(i) - a(i)) / max(a(i), b(i)); a(i) is the mean distance to the
/// rest of the own cluster, b(i) the smallest mean distance to another
/// cluster. Singleton clusters score 0. Requires k >= 2 non-empty clusters.
SilhouetteResult silhouette(const Eigen::MatrixXd& distances,
                            const std::vector<int>& labels, int k);

/// Average silhouette per protected class (class_of in 0..q-1).
Eigen::VectorXd per_class_silhouette(const Eigen::VectorXd& values,
                                     const std::vector<int>& class_of, int q);

/// min over clusters of min(#class0/#class1, #class1/#class0), in [0, 1].
/// A cluster missing one class scores 0. Both classes must occur overall.
double balance(const std::vector<int>& labels, int k,
               const std::vector<int>& binary_class);

/// (1/K) sum_k |p_k - p_t| where p_k is cluster k's class-proportion vector
/// and p_t the global one, both from counts. 0 means perfectly fair.
double unfairness(const std::vector<int>& labels, int k,
                  const Eigen::MatrixXd& class_counts);

struct Objectives {
    double kmeans_ss = 0.0;    // sum of squared distances to cluster means
    double kmedian_sum = 0.0;  // sum of distances to best in-cluster medoid
};

Objectives partition_objectives(const Eigen::MatrixXd& coords,
                                const std::vector<int>& labels, int k);

/// Bundle emitted by the cluster/metrics pipelines.
struct MetricsReport {
    double avg_silhouette = 0.0;
    Eigen::VectorXd per_class_silhouette;
    double balance = -1.0;  // -1 when not applicable (q != 2)
    double unfairness = 0.0;
    Eigen::MatrixXd per_cluster_proportions;
    double kmeans_ss = 0.0;
    double kmedian_sum = 0.0;
};

}  // namespace arclust

#endif
