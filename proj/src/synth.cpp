#include "arclust/synth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "arclust/rng.hpp"

namespace arclust {

Dataset make_gaussians(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x9a55));
    const int per = 50;
    const double sd = 0.5;  // variance 0.25
    const double mx[4] = {-1.0, -1.0, 1.0, 1.0};
    const double my[4] = {0.5, -0.5, 0.5, -0.5};
    const double cls[4] = {1.0, 1.0, -1.0, -1.0};

    Eigen::MatrixXd x(4 * per, 2);
    Eigen::MatrixXd s(4 * per, 1);
    std::vector<std::string> ids;
    ids.reserve(4 * per);
    int row = 0;
    for (int c = 0; c < 4; ++c)
        for (int i = 0; i < per; ++i, ++row) {
            x(row, 0) = mx[c] + sd * rng.normal();
            x(row, 1) = my[c] + sd * rng.normal();
            s(row, 0) = cls[c];
            ids.push_back("g" + std::to_string(row));
        }
    return Dataset(std::move(x), std::move(s), std::move(ids));
}

Dataset make_rings(std::uint64_t seed, const RingOptions& options) {
    if (options.total < 3) throw std::invalid_argument("make_rings: total too small");
    if (options.circle_fraction <= 0.0 || options.circle_fraction >= 1.0)
        throw std::invalid_argument("make_rings: circle_fraction must be in (0, 1)");
    if (options.width <= 0.0 || options.inner_radius <= options.width / 2.0)
        throw std::invalid_argument("make_rings: invalid radii/width");

    Rng rng(derive_seed(seed, 0x2177));
    const int n_circles = static_cast<int>(std::lround(options.circle_fraction * options.total));
    const int n_squares = options.total - n_circles;
    const double ri = options.inner_radius, ro = options.outer_radius;
    const int n_inner = static_cast<int>(std::lround(n_squares * ri / (ri + ro)));
    const int n_outer = n_squares - n_inner;

    Eigen::MatrixXd x(options.total, 2);
    Eigen::MatrixXd s(options.total, 2);
    std::vector<std::string> ids;
    ids.reserve(options.total);

    const double two_pi = 6.283185307179586476925286766559;
    int row = 0;
    auto emit_ring = [&](int count, double radius, bool circle) {
        for (int i = 0; i < count; ++i, ++row) {
            double r = radius + rng.uniform(-options.width / 2.0, options.width / 2.0);
            double theta = rng.uniform(0.0, two_pi);
            x(row, 0) = r * std::cos(theta);
            x(row, 1) = r * std::sin(theta);
            s(row, 0) = circle ? 1.0 : 0.0;
            s(row, 1) = circle ? 0.0 : 1.0;
            ids.push_back("r" + std::to_string(row));
        }
    };
    emit_ring(n_inner, options.inner_radius, false);
    emit_ring(n_circles, options.middle_radius, true);
    emit_ring(n_outer, options.outer_radius, false);

    return Dataset(std::move(x), std::move(s), std::move(ids));
}

}  // namespace arclust
