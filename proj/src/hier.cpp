#include "arclust/hier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace arclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lazy nearest-pair structure over the forward pairs (i, j), i < j, of a
// working dissimilarity matrix. Each row keeps a candidate (value, neighbour)
// that is a lower bound of the true forward row minimum; bounds are lowered
// eagerly when entries shrink and re-validated on pop, which keeps the whole
// merge loop at O(n^2 log n) in practice.
class ForwardMinCache {
  public:
    template <typename DistFn>
    void init(int n, const std::vector<char>& active, DistFn dist) {
        val_.assign(n, kInf);
        nbr_.assign(n, -1);
        order_.clear();
        for (int i = 0; i < n; ++i)
            if (active[i]) refresh_row(i, n, active, dist);
    }

    template <typename DistFn>
    void refresh_row(int i, int n, const std::vector<char>& active, DistFn dist) {
        if (nbr_[i] >= 0 || val_[i] < kInf) order_.erase({val_[i], i});
        double best = kInf;
        int arg = -1;
        for (int j = i + 1; j < n; ++j) {
            if (!active[j]) continue;
            double d = dist(i, j);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        val_[i] = best;
        nbr_[i] = arg;
        if (arg >= 0) order_.insert({best, i});
    }

    void maybe_lower(int i, int j, double d) {
        if (d < val_[i]) {
            if (nbr_[i] >= 0) order_.erase({val_[i], i});
            val_[i] = d;
            nbr_[i] = j;
            order_.insert({d, i});
        }
    }

    void remove_row(int i) {
        if (nbr_[i] >= 0) order_.erase({val_[i], i});
        val_[i] = kInf;
        nbr_[i] = -1;
    }

    template <typename DistFn>
    std::pair<int, int> pop_min(int n, const std::vector<char>& active, DistFn dist) {
        while (!order_.empty()) {
            auto it = order_.begin();
            int i = it->second;
            int j = nbr_[i];
            if (j < 0 || !active[j] || dist(i, j) != it->first) {
                refresh_row(i, n, active, dist);
                continue;
            }
            return {i, j};
        }
        throw std::logic_error("nearest-pair cache exhausted");
    }

  private:
    std::vector<double> val_;
    std::vector<int> nbr_;
    std::set<std::pair<double, int>> order_;  // (value, row), ties on lowest row
};

}  // namespace

const char* linkage_name(LinkageMethod m) {
    switch (m) {
        case LinkageMethod::single: return "single";
        case LinkageMethod::complete: return "complete";
        case LinkageMethod::average: return "average";
    }
    return "?";
}

LinkageMethod linkage_from_name(const std::string& name) {
    if (name == "single") return LinkageMethod::single;
    if (name == "complete") return LinkageMethod::complete;
    if (name == "average") return LinkageMethod::average;
    throw std::invalid_argument("unknown linkage method: " + name);
}

Dendrogram linkage(const DissimMatrix& m, LinkageMethod method) {
    const int n = static_cast<int>(m.n());
    if (n < 2) throw std::invalid_argument("linkage: need n >= 2");
    if (!m.values.isApprox(m.values.transpose()))
        throw std::invalid_argument("linkage: matrix must be symmetric");

    Eigen::MatrixXd d = m.values;
    std::vector<char> active(n, 1);
    std::vector<double> size(n, 1.0);
    std::vector<int> cluster_id(n);
    for (int i = 0; i < n; ++i) cluster_id[i] = i;

    auto dist = [&d](int i, int j) { return d(i, j); };
    ForwardMinCache cache;
    cache.init(n, active, dist);

    Dendrogram out;
    out.n_leaves = n;
    out.shift_applied = m.shift_applied;
    out.merges.reserve(n - 1);

    for (int step = 0; step < n - 1; ++step) {
        auto [a, b] = cache.pop_min(n, active, dist);
        double h = d(a, b);
        double na = size[a], nb = size[b];

        for (int k = 0; k < n; ++k) {
            if (!active[k] || k == a || k == b) continue;
            double v = 0.0;
            switch (method) {
                case LinkageMethod::single: v = std::min(d(a, k), d(b, k)); break;
                case LinkageMethod::complete: v = std::max(d(a, k), d(b, k)); break;
                case LinkageMethod::average: v = (na * d(a, k) + nb * d(b, k)) / (na + nb); break;
            }
            d(a, k) = v;
            d(k, a) = v;
        }

        active[b] = 0;
        size[a] = na + nb;
        out.merges.push_back(Merge{std::min(cluster_id[a], cluster_id[b]),
                                   std::max(cluster_id[a], cluster_id[b]), h,
                                   static_cast<int>(na + nb)});
        cluster_id[a] = n + step;

        cache.remove_row(b);
        cache.refresh_row(a, n, active, dist);
        for (int k = 0; k < a; ++k)
            if (active[k]) cache.maybe_lower(k, a, d(k, a));
    }
    return out;
}

// ---------------------------------------------------------------------------
// charged Ward

struct ChargedWardEngine::Impl {
    int n = 0;
    DissimParams params;
    bool use_d2wx = false;  // families 1, 2
    bool use_d2s = false;   // family 2

    std::vector<char> active;
    std::vector<double> size;
    Eigen::MatrixXd xmean;  // slot-major rows
    Eigen::MatrixXd smean;
    Eigen::MatrixXd delta;  // working delta_W table
    Eigen::MatrixXd d2wx;
    Eigen::MatrixXd d2s;
    double shift = 0.0;
    std::vector<int> cluster_id;
    std::vector<Merge> merges;
    int active_n = 0;
    ForwardMinCache cache;

    double dist(int i, int j) const { return delta(i, j); }

    void check_active_pair(int a, int b) const {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b || !active[a] || !active[b])
            throw std::invalid_argument("charged ward: invalid or inactive cluster slot");
    }

    double ward_delta4(int a, int b) const {
        double na = size[a], nb = size[b];
        double pre = na * nb / (na + nb);
        double base = (xmean.row(a) - xmean.row(b)).norm();
        double svs = smean.row(a).dot(params.v_matrix * smean.row(b).transpose());
        double perturb = (svs > 0.0 ? 1.0 : (svs < 0.0 ? -1.0 : 0.0)) * params.u *
                         (1.0 - std::exp(-params.v * svs * svs)) *
                         std::exp(-params.w * base);
        return pre * (1.0 + perturb) * base;
    }
};

ChargedWardEngine::ChargedWardEngine(const Dataset& data, const DissimParams& params,
                                     bool apply_shift)
    : impl_(std::make_unique<Impl>()) {
    params.validate(data.p());
    const int n = static_cast<int>(data.n());
    if (n < 2) throw std::invalid_argument("charged_ward: need n >= 2");

    Impl& im = *impl_;
    im.n = n;
    im.params = params;
    im.use_d2wx = params.family == Family::delta1 || params.family == Family::delta2;
    im.use_d2s = params.family == Family::delta2;
    im.active.assign(n, 1);
    im.size.assign(n, 1.0);
    im.xmean = data.x();
    im.smean = data.s();
    im.cluster_id.resize(n);
    for (int i = 0; i < n; ++i) im.cluster_id[i] = i;
    im.active_n = n;

    im.delta.setZero(n, n);
    if (im.use_d2wx) im.d2wx.setZero(n, n);
    if (im.use_d2s) im.d2s.setZero(n, n);

    double min_delta = kInf;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // singleton prefactor ni nj / (ni + nj) = 1/2
            double v = 0.5 * eval_dissim(params, data.x().row(i), data.s().row(i),
                                         data.x().row(j), data.s().row(j));
            im.delta(i, j) = v;
            im.delta(j, i) = v;
            min_delta = std::min(min_delta, v);
            if (im.use_d2wx) {
                double dx = 0.5 * (data.x().row(i) - data.x().row(j)).squaredNorm();
                im.d2wx(i, j) = dx;
                im.d2wx(j, i) = dx;
            }
            if (im.use_d2s) {
                double ds = (data.s().row(i) - data.s().row(j)).squaredNorm();
                im.d2s(i, j) = ds;
                im.d2s(j, i) = ds;
            }
        }

    if (apply_shift && min_delta <= 0.0) {
        im.shift = std::abs(min_delta) + default_shift_epsilon(im.delta);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) im.delta(i, j) += im.shift;
    }

    im.cache.init(n, im.active, [&im](int i, int j) { return im.dist(i, j); });
}

ChargedWardEngine::~ChargedWardEngine() = default;
ChargedWardEngine::ChargedWardEngine(ChargedWardEngine&&) noexcept = default;
ChargedWardEngine& ChargedWardEngine::operator=(ChargedWardEngine&&) noexcept = default;

int ChargedWardEngine::n_leaves() const { return impl_->n; }
int ChargedWardEngine::active_count() const { return impl_->active_n; }

std::vector<int> ChargedWardEngine::active_slots() const {
    std::vector<int> out;
    for (int i = 0; i < impl_->n; ++i)
        if (impl_->active[i]) out.push_back(i);
    return out;
}

bool ChargedWardEngine::is_active(int slot) const {
    return slot >= 0 && slot < impl_->n && impl_->active[slot];
}

double ChargedWardEngine::dissim(int a, int b) const {
    impl_->check_active_pair(a, b);
    return impl_->delta(a, b);
}

double ChargedWardEngine::shift() const { return impl_->shift; }
int ChargedWardEngine::cluster_size(int slot) const {
    return static_cast<int>(impl_->size[slot]);
}
Eigen::VectorXd ChargedWardEngine::x_mean(int slot) const { return impl_->xmean.row(slot); }
Eigen::VectorXd ChargedWardEngine::s_mean(int slot) const { return impl_->smean.row(slot); }

double ChargedWardEngine::d2_wx(int a, int b) const {
    impl_->check_active_pair(a, b);
    if (!impl_->use_d2wx) throw std::logic_error("d2_wx table not maintained for this family");
    return impl_->d2wx(a, b);
}

double ChargedWardEngine::d2_s(int a, int b) const {
    impl_->check_active_pair(a, b);
    if (!impl_->use_d2s) throw std::logic_error("d2_s table not maintained for this family");
    return impl_->d2s(a, b);
}

const std::vector<Merge>& ChargedWardEngine::merges() const { return impl_->merges; }

int ChargedWardEngine::merge(int slot_a, int slot_b) {
    Impl& im = *impl_;
    im.check_active_pair(slot_a, slot_b);
    int a = std::min(slot_a, slot_b);
    int b = std::max(slot_a, slot_b);

    const double na = im.size[a], nb = im.size[b];
    const double nab = na + nb;
    const double height = im.delta(a, b);
    const double dwx_ab = im.use_d2wx ? im.d2wx(a, b) : 0.0;
    const double ds_ab = im.use_d2s ? im.d2s(a, b) : 0.0;
    const double delta_ab = im.delta(a, b);

    // merged means before table updates; delta4 re-evaluates from them
    Eigen::VectorXd new_xmean = (na * im.xmean.row(a) + nb * im.xmean.row(b)) / nab;
    Eigen::VectorXd new_smean = (na * im.smean.row(a) + nb * im.smean.row(b)) / nab;
    im.xmean.row(a) = new_xmean;
    im.smean.row(a) = new_smean;
    im.size[a] = nab;

    for (int k = 0; k < im.n; ++k) {
        if (!im.active[k] || k == a || k == b) continue;
        const double nk = im.size[k];
        const double denom = nab + nk;
        double nd = 0.0;
        switch (im.params.family) {
            case Family::delta1:
                nd = ((na + nk) * im.delta(a, k) + (nb + nk) * im.delta(b, k) -
                      nk * dwx_ab) /
                     denom;
                break;
            case Family::delta2: {
                double new_ds = (na * im.d2s(a, k) + nb * im.d2s(b, k)) / nab -
                                na * nb * ds_ab / (nab * nab);
                double new_dwx = ((na + nk) * im.d2wx(a, k) + (nb + nk) * im.d2wx(b, k) -
                                  nk * dwx_ab) /
                                 denom;
                im.d2s(a, k) = new_ds;
                im.d2s(k, a) = new_ds;
                nd = (1.0 + im.params.u * std::exp(-im.params.v * new_ds)) * new_dwx;
                break;
            }
            case Family::delta3:
                nd = ((na + nk) * im.delta(a, k) + (nb + nk) * im.delta(b, k) -
                      nk * delta_ab) /
                     denom;
                break;
            case Family::delta4:
                nd = im.ward_delta4(a, k);
                break;
        }
        if (im.use_d2wx) {
            double new_dwx = ((na + nk) * im.d2wx(a, k) + (nb + nk) * im.d2wx(b, k) -
                              nk * dwx_ab) /
                             denom;
            im.d2wx(a, k) = new_dwx;
            im.d2wx(k, a) = new_dwx;
        }
        im.delta(a, k) = nd;
        im.delta(k, a) = nd;
    }

    im.active[b] = 0;
    --im.active_n;
    im.merges.push_back(Merge{std::min(im.cluster_id[a], im.cluster_id[b]),
                              std::max(im.cluster_id[a], im.cluster_id[b]), height,
                              static_cast<int>(nab)});
    im.cluster_id[a] = im.n + static_cast<int>(im.merges.size()) - 1;

    auto dist = [&im](int i, int j) { return im.dist(i, j); };
    im.cache.remove_row(b);
    im.cache.refresh_row(a, im.n, im.active, dist);
    for (int k = 0; k < a; ++k)
        if (im.active[k]) im.cache.maybe_lower(k, a, im.delta(k, a));
    return a;
}

std::pair<int, int> ChargedWardEngine::min_pair() {
    Impl& im = *impl_;
    if (im.active_n < 2) throw std::logic_error("min_pair: fewer than two clusters");
    return im.cache.pop_min(im.n, im.active, [&im](int i, int j) { return im.dist(i, j); });
}

Dendrogram charged_ward(const Dataset& data, const DissimParams& params) {
    ChargedWardEngine eng(data, params, /*apply_shift=*/true);
    while (eng.active_count() > 1) {
        auto [a, b] = eng.min_pair();
        eng.merge(a, b);
    }
    Dendrogram out;
    out.n_leaves = eng.n_leaves();
    out.shift_applied = eng.shift();
    out.merges = eng.merges();
    return out;
}

Partition cut(const Dendrogram& dend, int k) {
    const int n = dend.n_leaves;
    if (k < 1 || k > n) throw std::invalid_argument("cut: k must be in 1..n");
    if (static_cast<int>(dend.merges.size()) != n - 1)
        throw std::invalid_argument("cut: malformed dendrogram");

    // union-find over cluster ids 0..2n-2, applying the first n-k merges
    std::vector<int> parent(2 * n - 1);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&parent](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int t = 0; t < n - k; ++t) {
        const Merge& mg = dend.merges[t];
        int target = n + t;
        parent[find(mg.a)] = target;
        parent[find(mg.b)] = target;
    }

    std::vector<int> labels(n, -1);
    std::vector<int> root_label(2 * n - 1, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root_label[r] < 0) root_label[r] = next++;
        labels[i] = root_label[r];
    }
    return Partition::from_labels(std::move(labels), k);
}

}  // namespace arclust
