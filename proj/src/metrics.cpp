#include "arclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arclust {

SilhouetteResult silhouette(const Eigen::MatrixXd& distances,
                            const std::vector<int>& labels, int k) {
    const Eigen::Index n = distances.rows();
    if (distances.cols() != n)
        throw std::invalid_argument("silhouette: distance matrix not square");
    if (static_cast<Eigen::Index>(labels.size()) != n)
        throw std::invalid_argument("silhouette: label count mismatch");
    if (k < 2) throw std::invalid_argument("silhouette: need k >= 2");

    std::vector<Eigen::Index> sizes(k, 0);
    for (int l : labels) {
        if (l < 0 || l >= k) throw std::invalid_argument("silhouette: label out of range");
        ++sizes[l];
    }
    for (int c = 0; c < k; ++c)
        if (sizes[c] == 0)
            throw std::invalid_argument("silhouette: empty cluster " + std::to_string(c));

    SilhouetteResult r;
    r.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (sizes[labels[i]] == 1) {
            r.values(i) = 0.0;
            continue;
        }
        std::vector<double> sum(k, 0.0);
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) sum[labels[j]] += distances(i, j);

        double a = sum[labels[i]] / static_cast<double>(sizes[labels[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c)
            if (c != labels[i]) b = std::min(b, sum[c] / static_cast<double>(sizes[c]));

        double denom = std::max(a, b);
        r.values(i) = denom > 0.0 ? (b - a) / denom : 0.0;
    }
    r.average = r.values.mean();
    return r;
}

Eigen::VectorXd per_class_silhouette(const Eigen::VectorXd& values,
                                     const std::vector<int>& class_of, int q) {
    if (static_cast<Eigen::Index>(class_of.size()) != values.size())
        throw std::invalid_argument("per_class_silhouette: size mismatch");
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(q);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(q);
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        int c = class_of[i];
        if (c < 0 || c >= q)
            throw std::invalid_argument("per_class_silhouette: class out of range");
        sums(c) += values(i);
        counts(c) += 1.0;
    }
    for (int c = 0; c < q; ++c)
        if (counts(c) == 0.0)
            throw std::invalid_argument("per_class_silhouette: class " +
                                        std::to_string(c) + " has no members");
    return sums.cwiseQuotient(counts);
}

double balance(const std::vector<int>& labels, int k,
               const std::vector<int>& binary_class) {
    if (binary_class.size() != labels.size())
        throw std::invalid_argument("balance: size mismatch");
    Eigen::Index total0 = 0, total1 = 0;
    for (int c : binary_class) {
        if (c == 0)
            ++total0;
        else if (c == 1)
            ++total1;
        else
            throw std::invalid_argument("balance: classes must be coded 0/1");
    }
    if (total0 == 0 || total1 == 0)
        throw std::invalid_argument("balance: both class values must be present");

    std::vector<Eigen::Index> n0(k, 0), n1(k, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= k)
            throw std::invalid_argument("balance: label out of range");
        if (binary_class[i] == 0)
            ++n0[labels[i]];
        else
            ++n1[labels[i]];
    }

    double worst = 1.0;
    for (int c = 0; c < k; ++c) {
        double b;
        if (n0[c] == 0 || n1[c] == 0)
            b = 0.0;  // x/0 = inf, so min is the zero ratio; 0/0 counts as 0
        else
            b = std::min(static_cast<double>(n0[c]) / static_cast<double>(n1[c]),
                         static_cast<double>(n1[c]) / static_cast<double>(n0[c]));
        worst = std::min(worst, b);
    }
    return std::clamp(worst, 0.0, 1.0);
}

double unfairness(const std::vector<int>& labels, int k,
                  const Eigen::MatrixXd& class_counts) {
    if (class_counts.rows() != static_cast<Eigen::Index>(labels.size()))
        throw std::invalid_argument("unfairness: counts row count mismatch");
    if ((class_counts.array() < 0.0).any())
        throw std::invalid_argument("unfairness: negative counts");

    Eigen::VectorXd global = class_counts.colwise().sum();
    double gtotal = global.sum();
    if (gtotal <= 0.0) throw std::invalid_argument("unfairness: zero global counts");
    Eigen::VectorXd p_t = global / gtotal;

    Eigen::MatrixXd props = cluster_proportions(labels, k, class_counts);
    double acc = 0.0;
    for (int c = 0; c < k; ++c) acc += (props.row(c).transpose() - p_t).norm();
    return acc / static_cast<double>(k);
}

Objectives partition_objectives(const Eigen::MatrixXd& coords,
                                const std::vector<int>& labels, int k) {
    const Eigen::Index n = coords.rows();
    if (static_cast<Eigen::Index>(labels.size()) != n)
        throw std::invalid_argument("partition_objectives: label count mismatch");

    std::vector<std::vector<Eigen::Index>> members(k);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (labels[i] < 0 || labels[i] >= k)
            throw std::invalid_argument("partition_objectives: label out of range");
        members[labels[i]].push_back(i);
    }

    Objectives obj;
    for (int c = 0; c < k; ++c) {
        if (members[c].empty())
            throw std::invalid_argument("partition_objectives: empty cluster");
        Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(coords.cols());
        for (Eigen::Index i : members[c]) mean += coords.row(i);
        mean /= static_cast<double>(members[c].size());
        for (Eigen::Index i : members[c])
            obj.kmeans_ss += (coords.row(i) - mean).squaredNorm();

        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index m : members[c]) {
            double s = 0.0;
            for (Eigen::Index i : members[c]) s += (coords.row(i) - coords.row(m)).norm();
            best = std::min(best, s);
        }
        obj.kmedian_sum += best;
    }
    return obj;
}

}  // namespace arclust
