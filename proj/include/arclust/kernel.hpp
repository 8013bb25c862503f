#ifndef ARCLUST_KERNEL_HPP
#define ARCLUST_KERNEL_HPP

#include <Eigen/Core>
#include <string>

#include "arclust/dissim.hpp"

namespace arclust {

/// Kernel on the unprotected attributes. squared_coords is
/// kappa(x, y) = sum_j x_j^2 y_j^2, the feature map (x_1^2, ..., x_d^2).
struct KernelSpec {
    enum class Kind { linear, polynomial, rbf, squared_coords };

    Kind kind = Kind::linear;
    int degree = 1;     // polynomial
    double coef = 0.0;  // polynomial
    double gamma = 1.0; // rbf

    static KernelSpec linear();
    static KernelSpec polynomial(int degree, double coef);
    static KernelSpec rbf(double gamma);
    static KernelSpec squared_coords();

    void validate() const;
    std::string name() const;
};

double kappa(const KernelSpec& kernel, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Kernel-induced distance sqrt(k(x,x) + k(y,y) - 2 k(x,y)). Radicands in
/// [-1e-10, 0) are clamped to 0 (Gram round-off); anything lower throws.
double d_kappa(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
               const KernelSpec& kernel);

/// Full matrix of d_kappa distances (the Gram matrix is materialized once).
Eigen::MatrixXd d_kappa_matrix(const Eigen::MatrixXd& x, const KernelSpec& kernel);

/// dissim_matrix with every Euclidean distance replaced by d_kappa.
DissimMatrix kernel_dissim_matrix(const Dataset& data, const DissimParams& params,
                                  const KernelSpec& kernel);

}  // namespace arclust

#endif
