#ifndef ARCLUST_HIER_HPP
#define ARCLUST_HIER_HPP

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "arclust/dissim.hpp"
#include "arclust/types.hpp"

namespace arclust {

/// One agglomeration step. Cluster ids follow the usual convention: leaves
/// are 0..n-1 and the t-th merge (0-based) creates id n+t.
struct Merge {
    int a = 0;
    int b = 0;
    double height = 0.0;
    int new_size = 0;
};

struct Dendrogram {
    std::vector<Merge> merges;  // exactly n_leaves - 1
    int n_leaves = 0;
    /// Global positivity shift applied to the initial dissimilarities
    /// (charged methods only); heights are recorded post-shift.
    double shift_applied = 0.0;
};

enum class LinkageMethod { single, complete, average };

const char* linkage_name(LinkageMethod m);
LinkageMethod linkage_from_name(const std::string& name);

/// Standard agglomerative clustering on a dissimilarity matrix with
/// Lance-Williams updates. Nearest pair selection breaks ties on the
/// lowest (i, j) row pair.
Dendrogram linkage(const DissimMatrix& m, LinkageMethod method);

/// Ward-type agglomeration under an attraction-repulsion dissimilarity:
/// cluster dissimilarity is (ni nj / (ni + nj)) * delta_l(means). Updates use
/// the family's recursion (delta1/delta2/delta3) or direct re-evaluation from
/// maintained means (delta4).
Dendrogram charged_ward(const Dataset& data, const DissimParams& params);

/// Labels for the k clusters present after n - k merges.
Partition cut(const Dendrogram& dend, int k);

/// Merge-step driver behind charged_ward, exposed so the recursions can be
/// exercised against direct evaluation on arbitrary merge sequences.
class ChargedWardEngine {
  public:
    /// apply_shift: add |min| + eps to the initial pair dissimilarities when
    /// the minimum is <= 0 (the procedure's positivity step).
    ChargedWardEngine(const Dataset& data, const DissimParams& params,
                      bool apply_shift = true);
    ~ChargedWardEngine();
    ChargedWardEngine(ChargedWardEngine&&) noexcept;
    ChargedWardEngine& operator=(ChargedWardEngine&&) noexcept;

    int n_leaves() const;
    int active_count() const;
    std::vector<int> active_slots() const;
    bool is_active(int slot) const;

    double dissim(int slot_a, int slot_b) const;
    double shift() const;

    int cluster_size(int slot) const;
    Eigen::VectorXd x_mean(int slot) const;
    Eigen::VectorXd s_mean(int slot) const;
    /// Ward-weighted squared x-mean distance table entry (families 1, 2).
    double d2_wx(int slot_a, int slot_b) const;
    /// Squared s-mean distance table entry (family 2).
    double d2_s(int slot_a, int slot_b) const;

    /// Merge the clusters at two active slots; the merged cluster occupies
    /// the smaller slot. Returns that slot.
    int merge(int slot_a, int slot_b);

    /// Lowest-dissimilarity active pair, ties broken lexicographically.
    std::pair<int, int> min_pair();

    const std::vector<Merge>& merges() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace arclust

#endif
