#include "arclust/flatcluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "arclust/rng.hpp"

namespace arclust {

namespace {

constexpr int kMaxLloydIters = 300;

Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& x, int k, Rng& rng) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd centers(k, x.cols());
    centers.row(0) = x.row(rng.index(static_cast<std::size_t>(n)));
    Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
        double total = d2.sum();
        Eigen::Index pick;
        if (total <= 0.0) {
            pick = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
        } else {
            double r = rng.uniform() * total;
            double acc = 0.0;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += d2(i);
                if (r < acc) {
                    pick = i;
                    break;
                }
            }
        }
        centers.row(c) = x.row(pick);
        d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }
    return centers;
}

struct LloydOutcome {
    std::vector<int> labels;
    Eigen::MatrixXd centers;
    double within_ss = 0.0;
    int iterations = 0;
};

LloydOutcome lloyd(const Eigen::MatrixXd& x, Eigen::MatrixXd centers) {
    const Eigen::Index n = x.rows();
    const int k = static_cast<int>(centers.rows());
    std::vector<int> labels(n, -1);

    int iter = 0;
    for (; iter < kMaxLloydIters; ++iter) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int c = 0; c < k; ++c) {
                double d = (x.row(i) - centers.row(c)).squaredNorm();
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            if (arg != labels[i]) {
                labels[i] = arg;
                changed = true;
            }
        }
        if (!changed) break;

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
        std::vector<Eigen::Index> counts(k, 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.row(labels[i]) += x.row(i);
            ++counts[labels[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
            } else {
                // re-seed at the point farthest from its assigned center
                double far_best = -1.0;
                Eigen::Index far_arg = 0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    double d = (x.row(i) - centers.row(labels[i])).squaredNorm();
                    if (d > far_best) {
                        far_best = d;
                        far_arg = i;
                    }
                }
                centers.row(c) = x.row(far_arg);
            }
        }
    }

    LloydOutcome out;
    out.within_ss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        out.within_ss += (x.row(i) - centers.row(labels[i])).squaredNorm();
    out.labels = std::move(labels);
    out.centers = std::move(centers);
    out.iterations = iter;
    return out;
}

// final guard: Lloyd can in principle end with an empty cluster on degenerate
// duplicate-heavy input; move the farthest point into it so the partition is valid
void fix_empty_clusters(LloydOutcome& o, const Eigen::MatrixXd& x, int k) {
    std::vector<Eigen::Index> counts(k, 0);
    for (int l : o.labels) ++counts[l];
    for (int c = 0; c < k; ++c) {
        while (counts[c] == 0) {
            double far_best = -1.0;
            Eigen::Index far_arg = 0;
            for (Eigen::Index i = 0; i < x.rows(); ++i) {
                if (counts[o.labels[i]] <= 1) continue;
                double d = (x.row(i) - o.centers.row(o.labels[i])).squaredNorm();
                if (d > far_best) {
                    far_best = d;
                    far_arg = i;
                }
            }
            --counts[o.labels[far_arg]];
            o.labels[far_arg] = c;
            ++counts[c];
            o.centers.row(c) = x.row(far_arg);
        }
    }
    o.within_ss = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        o.within_ss += (x.row(i) - o.centers.row(o.labels[i])).squaredNorm();
}

}  // namespace

KMeansResult kmeans_from_centers(const Eigen::MatrixXd& coords,
                                 const Eigen::MatrixXd& initial_centers) {
    const int k = static_cast<int>(initial_centers.rows());
    if (k < 1 || k > coords.rows())
        throw std::invalid_argument("kmeans: k must be in 1..n");
    if (initial_centers.cols() != coords.cols())
        throw std::invalid_argument("kmeans: center dimension mismatch");
    LloydOutcome o = lloyd(coords, initial_centers);
    fix_empty_clusters(o, coords, k);
    KMeansResult r;
    r.partition = Partition::from_labels(std::move(o.labels), k);
    r.centers = std::move(o.centers);
    r.within_ss = o.within_ss;
    r.iterations = o.iterations;
    return r;
}

KMeansResult kmeans(const Eigen::MatrixXd& coords, int k, int restarts,
                    std::uint64_t seed) {
    if (k < 2 || k > coords.rows())
        throw std::invalid_argument("kmeans: k must be in 2..n");
    if (restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");

    KMeansResult best;
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        Eigen::MatrixXd init = kmeanspp_init(coords, k, rng);
        KMeansResult cur = kmeans_from_centers(coords, init);
        cur.seed = seed;
        if (!have || cur.within_ss < best.within_ss) {
            best = std::move(cur);
            have = true;
        }
    }
    return best;
}

namespace {

double medoid_cost(const Eigen::MatrixXd& d, const std::vector<int>& meds) {
    double cost = 0.0;
    for (Eigen::Index j = 0; j < d.rows(); ++j) {
        double b = std::numeric_limits<double>::infinity();
        for (int m : meds) b = std::min(b, d(j, m));
        cost += b;
    }
    return cost;
}

// PAM BUILD: greedy medoid set minimizing the assignment cost
std::vector<int> pam_build(const Eigen::MatrixXd& d, int k) {
    const Eigen::Index n = d.rows();
    std::vector<int> medoids;
    std::vector<char> is_medoid(n, 0);
    Eigen::Index first = 0;
    double first_cost = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        double c = d.row(i).sum();
        if (c < first_cost) {
            first_cost = c;
            first = i;
        }
    }
    medoids.push_back(static_cast<int>(first));
    is_medoid[first] = 1;
    Eigen::VectorXd nearest = d.col(first);
    while (static_cast<int>(medoids.size()) < k) {
        double best_gain = -std::numeric_limits<double>::infinity();
        Eigen::Index best_c = -1;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (is_medoid[c]) continue;
            double gain = 0.0;
            for (Eigen::Index j = 0; j < n; ++j)
                gain += std::max(0.0, nearest(j) - d(j, c));
            if (gain > best_gain) {
                best_gain = gain;
                best_c = c;
            }
        }
        medoids.push_back(static_cast<int>(best_c));
        is_medoid[best_c] = 1;
        nearest = nearest.cwiseMin(d.col(best_c));
    }
    return medoids;
}

// SWAP: apply the best strictly-improving (medoid, candidate) exchange until
// none exists
double pam_swap(const Eigen::MatrixXd& d, std::vector<int>& medoids) {
    const Eigen::Index n = d.rows();
    std::vector<char> is_medoid(n, 0);
    for (int m : medoids) is_medoid[m] = 1;
    double cost = medoid_cost(d, medoids);
    for (;;) {
        double best_cost = cost;
        int best_mi = -1;
        Eigen::Index best_h = -1;
        for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
            for (Eigen::Index h = 0; h < n; ++h) {
                if (is_medoid[h]) continue;
                std::vector<int> trial = medoids;
                trial[mi] = static_cast<int>(h);
                double c = medoid_cost(d, trial);
                if (c < best_cost - 1e-15) {
                    best_cost = c;
                    best_mi = static_cast<int>(mi);
                    best_h = h;
                }
            }
        }
        if (best_mi < 0) break;
        is_medoid[medoids[best_mi]] = 0;
        medoids[best_mi] = static_cast<int>(best_h);
        is_medoid[best_h] = 1;
        cost = best_cost;
    }
    return cost;
}

}  // namespace

KMedoidsResult kmedoids(const Eigen::MatrixXd& coords, int k, std::uint64_t seed,
                        int restarts) {
    const Eigen::Index n = coords.rows();
    if (k < 2 || k > n) throw std::invalid_argument("kmedoids: k must be in 2..n");
    if (restarts < 1) throw std::invalid_argument("kmedoids: restarts must be >= 1");

    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double v = (coords.row(i) - coords.row(j)).norm();
            d(i, j) = v;
            d(j, i) = v;
        }
    }

    std::vector<int> medoids = pam_build(d, k);
    double cost = pam_swap(d, medoids);
    for (int r = 1; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        std::vector<int> pool(n);
        for (Eigen::Index i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
        for (int i = 0; i < k; ++i)
            std::swap(pool[i], pool[i + rng.index(static_cast<std::size_t>(n - i))]);
        std::vector<int> trial(pool.begin(), pool.begin() + k);
        double c = pam_swap(d, trial);
        if (c < cost - 1e-15) {
            cost = c;
            medoids = trial;
        }
    }

    std::sort(medoids.begin(), medoids.end());
    std::vector<int> labels(n);
    double objective = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double b = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            if (d(j, medoids[m]) < b) {
                b = d(j, medoids[m]);
                arg = static_cast<int>(m);
            }
        }
        labels[j] = arg;
        objective += b;
    }
    // a medoid always anchors its own cluster, even under duplicate points
    for (std::size_t m = 0; m < medoids.size(); ++m)
        labels[medoids[m]] = static_cast<int>(m);

    KMedoidsResult r;
    r.partition = Partition::from_labels(std::move(labels), k);
    r.medoids = std::move(medoids);
    r.objective = objective;
    r.seed = seed;
    return r;
}

}  // namespace arclust
