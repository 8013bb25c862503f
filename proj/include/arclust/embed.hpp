#ifndef ARCLUST_EMBED_HPP
#define ARCLUST_EMBED_HPP

#include <Eigen/Core>

#include "arclust/dissim.hpp"

namespace arclust {

/// Classical MDS output: coordinates plus the full spectrum of the
/// double-centered matrix, so indefiniteness is visible to the caller.
struct Embedding {
    Eigen::MatrixXd coords;       // n x effective_dim, columns by descending eigenvalue
    Eigen::VectorXd eigenvalues;  // all n, descending
    double negative_mass = 0.0;   // sum |negative eigenvalues| / sum |eigenvalues|
    int requested_dim = 0;
    int effective_dim = 0;
};

/// Torgerson scaling: B = -1/2 J D^2 J, eigendecompose, keep the d_prime
/// largest strictly positive directions (tolerance 1e-9 * lambda_max).
/// Eigenvector signs are fixed (largest-magnitude entry positive) so output
/// is deterministic.
Embedding classical_mds(const DissimMatrix& m, int d_prime);

/// Pairwise Euclidean distance matrix of an embedding (test/report helper).
Eigen::MatrixXd embedded_distances(const Embedding& e);

}  // namespace arclust

#endif
