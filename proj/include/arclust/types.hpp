#ifndef ARCLUST_TYPES_HPP
#define ARCLUST_TYPES_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

namespace arclust {

/// The four attraction-repulsion dissimilarity families.
/// delta1: additive class perturbation of the squared Euclidean distance.
/// delta2: multiplicative perturbation of the squared Euclidean distance.
/// delta3: squared Euclidean distance minus a class-difference term.
/// delta4: local multiplicative perturbation of the (plain) Euclidean distance.
enum class Family { delta1, delta2, delta3, delta4 };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

enum class CodScheme { signed_pm1, one_hot, counts, raw };

const char* cod_scheme_name(CodScheme s);
CodScheme cod_scheme_from_name(const std::string& name);

/// How categorical protected attributes are turned into vectors in R^p.
struct Codification {
    CodScheme scheme = CodScheme::one_hot;
    int q = 0;  // number of classes, when applicable
};

/// A dataset of n records: unprotected attributes x (n x d) and protected
/// attributes s (n x p). Protected values are real-valued; discrete codings
/// are just a special case.
class Dataset {
  public:
    Dataset(Eigen::MatrixXd x, Eigen::MatrixXd s, std::vector<std::string> ids = {});

    const Eigen::MatrixXd& x() const { return x_; }
    const Eigen::MatrixXd& s() const { return s_; }
    const std::vector<std::string>& ids() const { return ids_; }

    Eigen::Index n() const { return x_.rows(); }
    Eigen::Index d() const { return x_.cols(); }
    Eigen::Index p() const { return s_.cols(); }

  private:
    Eigen::MatrixXd x_;
    Eigen::MatrixXd s_;
    std::vector<std::string> ids_;
};

/// Class-interaction pattern v_tilde scaled by a positive intensity v0.
/// Entry conventions: +1 repulsion, -1 attraction, 0 no interaction.
struct InteractionMatrix {
    Eigen::MatrixXd v_tilde;
    double v0 = 1.0;

    Eigen::MatrixXd v() const { return v0 * v_tilde; }
};

/// Guideline builder: validates v0 > 0 and v_tilde entries in {-1, 0, +1}.
/// Arbitrary symmetric interaction matrices may instead be passed directly
/// as DissimParams::v_matrix.
InteractionMatrix build_interaction(const Eigen::MatrixXd& v_tilde, double v0);

/// Free parameters of one dissimilarity family.
struct DissimParams {
    Family family = Family::delta2;
    Eigen::MatrixXd u_matrix;  // delta1 only, p x p symmetric
    Eigen::MatrixXd v_matrix;  // delta1 and delta4, p x p symmetric
    double u = 0.0;            // delta2/delta3 intensity; delta4 in [0,1]
    double v = 0.0;            // delta2/delta4 decay rate
    double w = 0.0;            // delta4 locality

    static DissimParams additive(Eigen::MatrixXd u_mat, Eigen::MatrixXd v_mat);
    static DissimParams multiplicative(double u, double v);
    static DissimParams subtractive(double u);
    static DissimParams local(Eigen::MatrixXd v_mat, double u, double v, double w);

    /// Throws std::invalid_argument on parameter-range or shape violations.
    void validate(Eigen::Index p) const;
};

/// A flat clustering: labels in 0..k-1 plus, when protected-class counts are
/// available, the per-cluster class proportion matrix (k x q).
struct Partition {
    std::vector<int> labels;
    int k = 0;
    Eigen::MatrixXd proportions;  // k x q, empty when no counts were attached

    /// Validates that every cluster index in 0..k-1 occurs at least once.
    static Partition from_labels(std::vector<int> labels, int k);
    /// Same, plus per-cluster proportions derived from class counts (n x q rows).
    static Partition from_labels(std::vector<int> labels, int k,
                                 const Eigen::MatrixXd& class_counts);

    std::vector<Eigen::Index> cluster_sizes() const;
};

/// Per-cluster class proportion matrix from raw per-record counts.
/// Row k is the summed counts of cluster k normalized by the cluster total.
Eigen::MatrixXd cluster_proportions(const std::vector<int>& labels, int k,
                                    const Eigen::MatrixXd& class_counts);

/// Encode categorical labels per the codification scheme.
/// signed_pm1: two classes mapped to +1/-1, lexicographically smallest -> +1.
/// one_hot/counts: q columns, row i is the unit vector of its class.
Eigen::MatrixXd encode_classes(const std::vector<std::string>& raw_labels,
                               const Codification& scheme);

/// The distinct categories in lexicographic order (the column order used by
/// encode_classes).
std::vector<std::string> distinct_categories(const std::vector<std::string>& raw_labels);

}  // namespace arclust

#endif
