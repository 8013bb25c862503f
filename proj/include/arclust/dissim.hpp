#ifndef ARCLUST_DISSIM_HPP
#define ARCLUST_DISSIM_HPP

#include <Eigen/Core>
#include <optional>

#include "arclust/types.hpp"

namespace arclust {

/// A symmetric n x n dissimilarity matrix plus the preprocessing metadata the
/// MDS pipeline needs (positivity shift, square-root flag).
struct DissimMatrix {
    Eigen::MatrixXd values;
    double shift_applied = 0.0;
    bool sqrt_applied = false;
    /// Parameters that produced the matrix; nullopt for plain distance
    /// matrices (Euclidean, geodesic, kernel-induced).
    std::optional<DissimParams> params;

    Eigen::Index n() const { return values.rows(); }
    Family family_or_none() const {
        return params ? params->family : Family::delta4;  // "no sqrt" behaviour
    }
};

// Pointwise dissimilarities. All throw std::invalid_argument on dimension
// mismatches, parameter-range violations or non-finite inputs.

/// 1'U1 + s1'V s2 + |x1 - x2|^2. Self-dissimilarity is generally nonzero.
double delta1(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
              const Eigen::VectorXd& x2, const Eigen::VectorXd& s2,
              const Eigen::MatrixXd& u_mat, const Eigen::MatrixXd& v_mat);

/// (1 + u e^{-v |s1-s2|^2}) |x1 - x2|^2
double delta2(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
              const Eigen::VectorXd& x2, const Eigen::VectorXd& s2, double u, double v);

/// |x1 - x2|^2 - u |s1 - s2|^2; may be negative.
double delta3(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
              const Eigen::VectorXd& x2, const Eigen::VectorXd& s2, double u);

/// (1 + sign(s1'Vs2) u (1 - e^{-v (s1'Vs2)^2}) e^{-w |x1-x2|}) |x1 - x2|
/// Plain Euclidean distance, not squared; sign(0) = 0.
double delta4(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
              const Eigen::VectorXd& x2, const Eigen::VectorXd& s2,
              const Eigen::MatrixXd& v_mat, double u, double v, double w);

/// Dispatch on params.family.
double eval_dissim(const DissimParams& params, const Eigen::VectorXd& x1,
                   const Eigen::VectorXd& s1, const Eigen::VectorXd& x2,
                   const Eigen::VectorXd& s2);

/// Family value given a precomputed base distance in place of |x1 - x2|
/// (squared internally where the family squares it).
double eval_dissim_base(const DissimParams& params, double base_dist,
                        const Eigen::VectorXd& s1, const Eigen::VectorXd& s2);

/// Matrix of pairwise Euclidean distances (not squared); params is nullopt.
DissimMatrix euclidean_matrix(const Eigen::MatrixXd& x);

/// Full n x n matrix of the selected family. Each unordered pair is computed
/// once and mirrored, so the result is exactly symmetric.
DissimMatrix dissim_matrix(const Dataset& data, const DissimParams& params);

/// Same, but every |x_i - x_j| is replaced by base_dist(i, j). Used for the
/// kernel-induced and geodesic pipelines.
DissimMatrix dissim_matrix_with_base(const Eigen::MatrixXd& base_dist,
                                     const Eigen::MatrixXd& s,
                                     const DissimParams& params);

/// Default epsilon for the positivity shift: 1e-8 * (max - min), floor 1e-12.
double default_shift_epsilon(const Eigen::MatrixXd& values);

/// The positivity-shift / square-root preprocessing of the MDS procedure:
/// if the off-diagonal minimum is <= 0, add |min| + epsilon to every entry
/// (diagonal included) and record it; then take elementwise square roots for
/// delta1/delta2/delta3 (delta4 and plain distance matrices stay unrooted).
/// Idempotent on already-rooted matrices.
DissimMatrix prepare_for_mds(const DissimMatrix& m, double epsilon);
DissimMatrix prepare_for_mds(const DissimMatrix& m);  // auto epsilon

}  // namespace arclust

#endif
