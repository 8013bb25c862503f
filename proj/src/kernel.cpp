#include "arclust/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace arclust {

KernelSpec KernelSpec::linear() { return KernelSpec{Kind::linear, 1, 0.0, 1.0}; }

KernelSpec KernelSpec::polynomial(int degree, double coef) {
    KernelSpec k{Kind::polynomial, degree, coef, 1.0};
    k.validate();
    return k;
}

KernelSpec KernelSpec::rbf(double gamma) {
    KernelSpec k{Kind::rbf, 1, 0.0, gamma};
    k.validate();
    return k;
}

KernelSpec KernelSpec::squared_coords() { return KernelSpec{Kind::squared_coords, 1, 0.0, 1.0}; }

void KernelSpec::validate() const {
    if (kind == Kind::polynomial && degree < 1)
        throw std::invalid_argument("polynomial kernel: degree must be >= 1");
    if (kind == Kind::rbf && !(gamma > 0.0))
        throw std::invalid_argument("rbf kernel: gamma must be > 0");
}

std::string KernelSpec::name() const {
    switch (kind) {
        case Kind::linear: return "linear";
        case Kind::polynomial:
            return "polynomial(degree=" + std::to_string(degree) +
                   ",coef=" + std::to_string(coef) + ")";
        case Kind::rbf: return "rbf(gamma=" + std::to_string(gamma) + ")";
        case Kind::squared_coords: return "squared_coords";
    }
    return "?";
}

double kappa(const KernelSpec& kernel, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) throw std::invalid_argument("kappa: dimension mismatch");
    switch (kernel.kind) {
        case KernelSpec::Kind::linear: return x.dot(y);
        case KernelSpec::Kind::polynomial:
            return std::pow(x.dot(y) + kernel.coef, kernel.degree);
        case KernelSpec::Kind::rbf:
            return std::exp(-kernel.gamma * (x - y).squaredNorm());
        case KernelSpec::Kind::squared_coords:
            return x.array().square().matrix().dot(y.array().square().matrix());
    }
    throw std::logic_error("kappa: unreachable");
}

namespace {

constexpr double kRadicandClamp = -1e-10;

double dist_from_gram(double kxx, double kyy, double kxy) {
    double rad = kxx + kyy - 2.0 * kxy;
    if (rad < kRadicandClamp)
        throw std::invalid_argument(
            "d_kappa: negative squared distance (kernel not PSD on these inputs)");
    return rad > 0.0 ? std::sqrt(rad) : 0.0;
}

}  // namespace

double d_kappa(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
               const KernelSpec& kernel) {
    kernel.validate();
    return dist_from_gram(kappa(kernel, x, x), kappa(kernel, y, y), kappa(kernel, x, y));
}

Eigen::MatrixXd d_kappa_matrix(const Eigen::MatrixXd& x, const KernelSpec& kernel) {
    kernel.validate();
    const Eigen::Index n = x.rows();
    Eigen::VectorXd diag(n);
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            double v = kappa(kernel, x.row(i), x.row(j));
            gram(i, j) = v;
            gram(j, i) = v;
        }
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = gram(i, i);

    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double v = dist_from_gram(diag(i), diag(j), gram(i, j));
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

DissimMatrix kernel_dissim_matrix(const Dataset& data, const DissimParams& params,
                                  const KernelSpec& kernel) {
    Eigen::MatrixXd base = d_kappa_matrix(data.x(), kernel);
    return dissim_matrix_with_base(base, data.s(), params);
}

}  // namespace arclust
