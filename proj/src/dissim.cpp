#include "arclust/dissim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arclust {

namespace {

void check_pair(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
                const Eigen::VectorXd& x2, const Eigen::VectorXd& s2) {
    if (x1.size() != x2.size() || s1.size() != s2.size())
        throw std::invalid_argument("dissimilarity: dimension mismatch");
    if (!x1.allFinite() || !x2.allFinite() || !s1.allFinite() || !s2.allFinite())
        throw std::invalid_argument("dissimilarity: non-finite input");
}

inline double sign0(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

inline double delta4_from_parts(double svs, double dist, double u, double v, double w) {
    double perturb = sign0(svs) * u * (1.0 - std::exp(-v * svs * svs)) *
                     std::exp(-w * dist);
    return (1.0 + perturb) * dist;
}

}  // namespace

double delta1(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
              const Eigen::VectorXd& x2, const Eigen::VectorXd& s2,
              const Eigen::MatrixXd& u_mat, const Eigen::MatrixXd& v_mat) {
    check_pair(x1, s1, x2, s2);
    if (u_mat.rows() != s1.size() || v_mat.rows() != s1.size())
        throw std::invalid_argument("delta1: U, V must be p x p");
    double ones_u_ones = u_mat.sum();
    return ones_u_ones + s1.dot(v_mat * s2) + (x1 - x2).squaredNorm();
}

double delta2(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
              const Eigen::VectorXd& x2, const Eigen::VectorXd& s2, double u, double v) {
    check_pair(x1, s1, x2, s2);
    if (u < 0.0 || v < 0.0) throw std::invalid_argument("delta2: u, v must be >= 0");
    return (1.0 + u * std::exp(-v * (s1 - s2).squaredNorm())) * (x1 - x2).squaredNorm();
}

double delta3(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
              const Eigen::VectorXd& x2, const Eigen::VectorXd& s2, double u) {
    check_pair(x1, s1, x2, s2);
    if (u < 0.0) throw std::invalid_argument("delta3: u must be >= 0");
    return (x1 - x2).squaredNorm() - u * (s1 - s2).squaredNorm();
}

double delta4(const Eigen::VectorXd& x1, const Eigen::VectorXd& s1,
              const Eigen::VectorXd& x2, const Eigen::VectorXd& s2,
              const Eigen::MatrixXd& v_mat, double u, double v, double w) {
    check_pair(x1, s1, x2, s2);
    if (u < 0.0 || u > 1.0) throw std::invalid_argument("delta4: u must be in [0, 1]");
    if (v < 0.0 || w < 0.0) throw std::invalid_argument("delta4: v, w must be >= 0");
    if (v_mat.rows() != s1.size())
        throw std::invalid_argument("delta4: V must be p x p");
    return delta4_from_parts(s1.dot(v_mat * s2), (x1 - x2).norm(), u, v, w);
}

double eval_dissim(const DissimParams& params, const Eigen::VectorXd& x1,
                   const Eigen::VectorXd& s1, const Eigen::VectorXd& x2,
                   const Eigen::VectorXd& s2) {
    switch (params.family) {
        case Family::delta1: return delta1(x1, s1, x2, s2, params.u_matrix, params.v_matrix);
        case Family::delta2: return delta2(x1, s1, x2, s2, params.u, params.v);
        case Family::delta3: return delta3(x1, s1, x2, s2, params.u);
        case Family::delta4:
            return delta4(x1, s1, x2, s2, params.v_matrix, params.u, params.v, params.w);
    }
    throw std::logic_error("eval_dissim: unreachable");
}

double eval_dissim_base(const DissimParams& params, double base_dist,
                        const Eigen::VectorXd& s1, const Eigen::VectorXd& s2) {
    switch (params.family) {
        case Family::delta1:
            return params.u_matrix.sum() + s1.dot(params.v_matrix * s2) +
                   base_dist * base_dist;
        case Family::delta2:
            return (1.0 + params.u * std::exp(-params.v * (s1 - s2).squaredNorm())) *
                   base_dist * base_dist;
        case Family::delta3:
            return base_dist * base_dist - params.u * (s1 - s2).squaredNorm();
        case Family::delta4:
            return delta4_from_parts(s1.dot(params.v_matrix * s2), base_dist, params.u,
                                     params.v, params.w);
    }
    throw std::logic_error("eval_dissim_base: unreachable");
}

DissimMatrix euclidean_matrix(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.rows();
    DissimMatrix m;
    m.values = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double d = (x.row(i) - x.row(j)).norm();
            m.values(i, j) = d;
            m.values(j, i) = d;
        }
    return m;
}

DissimMatrix dissim_matrix(const Dataset& data, const DissimParams& params) {
    params.validate(data.p());
    const Eigen::Index n = data.n();
    DissimMatrix m;
    m.params = params;
    m.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // the i == j case already yields the family's self-dissimilarity
        // (0 for delta2..4, 1'U1 + s_i'V s_i for delta1)
        for (Eigen::Index j = i; j < n; ++j) {
            double v = eval_dissim(params, data.x().row(i), data.s().row(i),
                                   data.x().row(j), data.s().row(j));
            m.values(i, j) = v;
            m.values(j, i) = v;
        }
    }
    return m;
}

DissimMatrix dissim_matrix_with_base(const Eigen::MatrixXd& base_dist,
                                     const Eigen::MatrixXd& s,
                                     const DissimParams& params) {
    if (base_dist.rows() != base_dist.cols())
        throw std::invalid_argument("dissim_matrix_with_base: base matrix not square");
    if (base_dist.rows() != s.rows())
        throw std::invalid_argument("dissim_matrix_with_base: row count mismatch");
    params.validate(s.cols());
    const Eigen::Index n = s.rows();
    DissimMatrix m;
    m.params = params;
    m.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            double v = eval_dissim_base(params, base_dist(i, j), s.row(i), s.row(j));
            m.values(i, j) = v;
            m.values(j, i) = v;
        }
    return m;
}

double default_shift_epsilon(const Eigen::MatrixXd& values) {
    double range = values.maxCoeff() - values.minCoeff();
    return std::max(1e-8 * range, 1e-12);
}

DissimMatrix prepare_for_mds(const DissimMatrix& m, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("prepare_for_mds: epsilon must be > 0");
    if (m.sqrt_applied) return m;

    DissimMatrix out = m;
    const Eigen::Index n = m.n();

    // the trigger is the off-diagonal minimum (self-dissimilarities of the
    // zero-diagonal families would otherwise force a shift on every matrix);
    // the shift itself is applied to all entries, diagonal included
    double min_off = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) min_off = std::min(min_off, m.values(i, j));

    if (n > 1 && min_off <= 0.0) {
        double shift = std::abs(min_off) + epsilon;
        out.values.array() += shift;
        out.shift_applied = shift;
    }

    Family fam = m.family_or_none();
    if (m.params && (fam == Family::delta1 || fam == Family::delta2 || fam == Family::delta3)) {
        if ((out.values.array() < 0.0).any())
            throw std::invalid_argument(
                "prepare_for_mds: negative entries remain after shift (diagonal below "
                "the off-diagonal minimum)");
        out.values = out.values.array().sqrt();
        out.sqrt_applied = true;
    }
    return out;
}

DissimMatrix prepare_for_mds(const DissimMatrix& m) {
    return prepare_for_mds(m, default_shift_epsilon(m.values));
}

}  // namespace arclust
