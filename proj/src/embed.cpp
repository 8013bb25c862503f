#include "arclust/embed.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arclust {

Embedding classical_mds(const DissimMatrix& m, int d_prime) {
    const Eigen::Index n = m.n();
    if (n < 2) throw std::invalid_argument("classical_mds: need n >= 2");
    if (d_prime < 1) throw std::invalid_argument("classical_mds: d_prime must be >= 1");
    if (d_prime > n - 1)
        throw std::invalid_argument("classical_mds: d_prime must be <= n - 1");
    if ((m.values.array() < 0.0).any())
        throw std::invalid_argument("classical_mds: matrix has negative entries; prepare it first");

    // B = -1/2 J (D o D) J with J = I - 11'/n, written as explicit row/column
    // centering of the squared matrix
    Eigen::MatrixXd sq = m.values.array().square();
    Eigen::VectorXd row_mean = sq.rowwise().mean();
    double total_mean = row_mean.mean();
    Eigen::MatrixXd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            b(i, j) = -0.5 * (sq(i, j) - row_mean(i) - row_mean(j) + total_mean);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("classical_mds: eigendecomposition failed");

    // Eigen returns ascending order; flip to descending
    Eigen::VectorXd evals = solver.eigenvalues().reverse();
    Eigen::MatrixXd evecs = solver.eigenvectors().rowwise().reverse();

    // deterministic sign: largest-magnitude entry of each eigenvector positive
    for (Eigen::Index c = 0; c < evecs.cols(); ++c) {
        Eigen::Index arg = 0;
        evecs.col(c).cwiseAbs().maxCoeff(&arg);
        if (evecs(arg, c) < 0.0) evecs.col(c) = -evecs.col(c);
    }

    double lambda_max = evals(0);
    double tol = 1e-9 * std::max(lambda_max, 0.0);
    int keep = 0;
    while (keep < d_prime && keep < n && evals(keep) > tol) ++keep;

    Embedding e;
    e.eigenvalues = evals;
    e.requested_dim = d_prime;
    e.effective_dim = keep;
    e.coords.resize(n, keep);
    for (int c = 0; c < keep; ++c)
        e.coords.col(c) = std::sqrt(evals(c)) * evecs.col(c);

    double abs_sum = evals.array().abs().sum();
    double neg_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (evals(i) < 0.0) neg_sum += -evals(i);
    e.negative_mass = abs_sum > 0.0 ? neg_sum / abs_sum : 0.0;
    return e;
}

Eigen::MatrixXd embedded_distances(const Embedding& e) {
    const Eigen::Index n = e.coords.rows();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double v = (e.coords.row(i) - e.coords.row(j)).norm();
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

}  // namespace arclust
