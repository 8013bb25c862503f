#ifndef ARCLUST_FLATCLUSTER_HPP
#define ARCLUST_FLATCLUSTER_HPP

#include <Eigen/Core>
#include <cstdint>

#include "arclust/types.hpp"

namespace arclust {

struct KMeansResult {
    Partition partition;
    Eigen::MatrixXd centers;  // k x d'
    double within_ss = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
};

/// Lloyd iterations from k-means++ starts; best of `restarts` runs by
/// within-cluster sum of squares (ties: lowest restart index). Deterministic
/// for a given (seed, restarts). Empty clusters are re-seeded at the point
/// farthest from its current center.
KMeansResult kmeans(const Eigen::MatrixXd& coords, int k, int restarts,
                    std::uint64_t seed);

/// Single Lloyd run from explicit initial centers (deterministic; used by
/// permutation-invariance tests and callers that manage their own starts).
KMeansResult kmeans_from_centers(const Eigen::MatrixXd& coords,
                                 const Eigen::MatrixXd& initial_centers);

struct KMedoidsResult {
    Partition partition;
    std::vector<int> medoids;
    double objective = 0.0;  // sum of Euclidean distances to assigned medoid
    std::uint64_t seed = 0;
};

/// PAM on Euclidean distances with seeded restarts: the first start is the
/// deterministic BUILD, the rest are random medoid subsets; each runs SWAP to
/// a local optimum and the best objective wins (ties: earliest restart).
KMedoidsResult kmedoids(const Eigen::MatrixXd& coords, int k, std::uint64_t seed = 0,
                        int restarts = 20);

}  // namespace arclust

#endif
