#include "arclust/types.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace arclust {

const char* family_name(Family f) {
    switch (f) {
        case Family::delta1: return "delta1";
        case Family::delta2: return "delta2";
        case Family::delta3: return "delta3";
        case Family::delta4: return "delta4";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "delta1") return Family::delta1;
    if (name == "delta2") return Family::delta2;
    if (name == "delta3") return Family::delta3;
    if (name == "delta4") return Family::delta4;
    throw std::invalid_argument("unknown dissimilarity family: " + name);
}

const char* cod_scheme_name(CodScheme s) {
    switch (s) {
        case CodScheme::signed_pm1: return "signed";
        case CodScheme::one_hot: return "one_hot";
        case CodScheme::counts: return "counts";
        case CodScheme::raw: return "raw";
    }
    return "?";
}

CodScheme cod_scheme_from_name(const std::string& name) {
    if (name == "signed") return CodScheme::signed_pm1;
    if (name == "one_hot") return CodScheme::one_hot;
    if (name == "counts") return CodScheme::counts;
    if (name == "raw") return CodScheme::raw;
    throw std::invalid_argument("unknown codification scheme: " + name);
}

Dataset::Dataset(Eigen::MatrixXd x, Eigen::MatrixXd s, std::vector<std::string> ids)
    : x_(std::move(x)), s_(std::move(s)), ids_(std::move(ids)) {
    if (x_.rows() < 1 || x_.cols() < 1)
        throw std::invalid_argument("Dataset: x must be non-empty (n >= 1, d >= 1)");
    if (s_.cols() < 1)
        throw std::invalid_argument("Dataset: s must have p >= 1 columns");
    if (s_.rows() != x_.rows())
        throw std::invalid_argument("Dataset: x and s row counts differ");
    if (!x_.allFinite() || !s_.allFinite())
        throw std::invalid_argument("Dataset: non-finite entries");
    if (!ids_.empty() && static_cast<Eigen::Index>(ids_.size()) != x_.rows())
        throw std::invalid_argument("Dataset: ids length does not match row count");
}

InteractionMatrix build_interaction(const Eigen::MatrixXd& v_tilde, double v0) {
    if (!(v0 > 0.0)) throw std::invalid_argument("build_interaction: v0 must be > 0");
    if (v_tilde.rows() != v_tilde.cols())
        throw std::invalid_argument("build_interaction: v_tilde must be square");
    for (Eigen::Index i = 0; i < v_tilde.rows(); ++i)
        for (Eigen::Index j = 0; j < v_tilde.cols(); ++j) {
            double e = v_tilde(i, j);
            if (e != -1.0 && e != 0.0 && e != 1.0)
                throw std::invalid_argument(
                    "build_interaction: v_tilde entries must be -1, 0 or +1");
        }
    return InteractionMatrix{v_tilde, v0};
}

namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* name) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(name) + " must be square");
    if (!m.isApprox(m.transpose()))
        throw std::invalid_argument(std::string(name) + " must be symmetric");
}

}  // namespace

DissimParams DissimParams::additive(Eigen::MatrixXd u_mat, Eigen::MatrixXd v_mat) {
    DissimParams p;
    p.family = Family::delta1;
    p.u_matrix = std::move(u_mat);
    p.v_matrix = std::move(v_mat);
    return p;
}

DissimParams DissimParams::multiplicative(double u, double v) {
    DissimParams p;
    p.family = Family::delta2;
    p.u = u;
    p.v = v;
    return p;
}

DissimParams DissimParams::subtractive(double u) {
    DissimParams p;
    p.family = Family::delta3;
    p.u = u;
    return p;
}

DissimParams DissimParams::local(Eigen::MatrixXd v_mat, double u, double v, double w) {
    DissimParams p;
    p.family = Family::delta4;
    p.v_matrix = std::move(v_mat);
    p.u = u;
    p.v = v;
    p.w = w;
    return p;
}

void DissimParams::validate(Eigen::Index p) const {
    switch (family) {
        case Family::delta1:
            if (u_matrix.size() == 0 || v_matrix.size() == 0)
                throw std::invalid_argument("delta1 requires U and V matrices");
            require_symmetric(u_matrix, "U");
            require_symmetric(v_matrix, "V");
            if (u_matrix.rows() != p || v_matrix.rows() != p)
                throw std::invalid_argument("delta1: U, V must be p x p");
            break;
        case Family::delta2:
            if (u < 0.0 || v < 0.0)
                throw std::invalid_argument("delta2 requires u >= 0 and v >= 0");
            break;
        case Family::delta3:
            if (u < 0.0) throw std::invalid_argument("delta3 requires u >= 0");
            break;
        case Family::delta4:
            if (u < 0.0 || u > 1.0)
                throw std::invalid_argument("delta4 requires 0 <= u <= 1");
            if (v < 0.0 || w < 0.0)
                throw std::invalid_argument("delta4 requires v >= 0 and w >= 0");
            if (v_matrix.size() == 0)
                throw std::invalid_argument("delta4 requires a V matrix");
            require_symmetric(v_matrix, "V");
            if (v_matrix.rows() != p)
                throw std::invalid_argument("delta4: V must be p x p");
            break;
    }
    if (!std::isfinite(u) || !std::isfinite(v) || !std::isfinite(w))
        throw std::invalid_argument("non-finite dissimilarity parameter");
}

Partition Partition::from_labels(std::vector<int> labels, int k) {
    if (k < 1) throw std::invalid_argument("Partition: k must be >= 1");
    std::vector<bool> seen(k, false);
    for (int l : labels) {
        if (l < 0 || l >= k)
            throw std::invalid_argument("Partition: label out of range 0..k-1");
        seen[l] = true;
    }
    for (int c = 0; c < k; ++c)
        if (!seen[c])
            throw std::invalid_argument("Partition: cluster " + std::to_string(c) +
                                        " is empty");
    Partition part;
    part.labels = std::move(labels);
    part.k = k;
    return part;
}

Partition Partition::from_labels(std::vector<int> labels, int k,
                                 const Eigen::MatrixXd& class_counts) {
    Partition part = from_labels(std::move(labels), k);
    part.proportions = cluster_proportions(part.labels, k, class_counts);
    return part;
}

std::vector<Eigen::Index> Partition::cluster_sizes() const {
    std::vector<Eigen::Index> sizes(k, 0);
    for (int l : labels) ++sizes[l];
    return sizes;
}

Eigen::MatrixXd cluster_proportions(const std::vector<int>& labels, int k,
                                    const Eigen::MatrixXd& class_counts) {
    if (class_counts.rows() != static_cast<Eigen::Index>(labels.size()))
        throw std::invalid_argument("cluster_proportions: counts row count mismatch");
    if ((class_counts.array() < 0.0).any())
        throw std::invalid_argument("cluster_proportions: negative counts");
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, class_counts.cols());
    for (Eigen::Index i = 0; i < class_counts.rows(); ++i)
        sums.row(labels[i]) += class_counts.row(i);
    Eigen::MatrixXd props(k, class_counts.cols());
    for (int c = 0; c < k; ++c) {
        double total = sums.row(c).sum();
        if (total <= 0.0)
            throw std::invalid_argument("cluster_proportions: cluster " +
                                        std::to_string(c) + " has zero total count");
        props.row(c) = sums.row(c) / total;
    }
    return props;
}

std::vector<std::string> distinct_categories(const std::vector<std::string>& raw_labels) {
    std::set<std::string> s(raw_labels.begin(), raw_labels.end());
    return std::vector<std::string>(s.begin(), s.end());
}

Eigen::MatrixXd encode_classes(const std::vector<std::string>& raw_labels,
                               const Codification& scheme) {
    if (raw_labels.empty())
        throw std::invalid_argument("encode_classes: empty label vector");
    const auto cats = distinct_categories(raw_labels);
    const int q = static_cast<int>(cats.size());
    if (scheme.q > 0 && scheme.q != q)
        throw std::invalid_argument("encode_classes: expected " +
                                    std::to_string(scheme.q) + " classes, found " +
                                    std::to_string(q));
    std::map<std::string, int> index;
    for (int j = 0; j < q; ++j) index[cats[j]] = j;

    const Eigen::Index n = static_cast<Eigen::Index>(raw_labels.size());
    switch (scheme.scheme) {
        case CodScheme::signed_pm1: {
            if (q != 2)
                throw std::invalid_argument(
                    "signed codification requires exactly 2 distinct categories, found " +
                    std::to_string(q));
            Eigen::MatrixXd out(n, 1);
            for (Eigen::Index i = 0; i < n; ++i)
                out(i, 0) = index[raw_labels[i]] == 0 ? 1.0 : -1.0;
            return out;
        }
        case CodScheme::one_hot:
        case CodScheme::counts: {
            // per-record category counts of a single label coincide with one-hot rows
            Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, q);
            for (Eigen::Index i = 0; i < n; ++i) out(i, index[raw_labels[i]]) = 1.0;
            return out;
        }
        case CodScheme::raw:
            throw std::invalid_argument(
                "raw codification passes numeric columns through; it does not apply to "
                "categorical labels");
    }
    throw std::logic_error("encode_classes: unreachable");
}

}  // namespace arclust
