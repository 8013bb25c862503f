#include "doctest.h"

#include "arclust/rng.hpp"
#include "arclust/synth.hpp"
#include "arclust/tune.hpp"
#include "oracles.hpp"

using namespace arclust;

namespace {

GridCell cell(double unfairness, double silhouette, std::size_t index, bool ok = true) {
    GridCell c;
    c.param_index = index;
    c.unfairness = unfairness;
    c.avg_silhouette = silhouette;
    c.ok = ok;
    return c;
}

}  // namespace

TEST_CASE("select_best picks the lowest unfairness among feasible cells") {
    std::vector<GridCell> cells = {cell(0.5, 0.6, 0), cell(0.1, 0.1, 1), cell(0.2, 0.4, 2)};
    auto best = select_best(cells, 0.3);
    REQUIRE(best.has_value());
    CHECK(*best == 2);

    // single-cell grid: best iff feasible
    std::vector<GridCell> one = {cell(0.9, 0.25, 0)};
    CHECK(select_best(one, 0.2).value() == 0);
    CHECK_FALSE(select_best(one, 0.3).has_value());
}

TEST_CASE("select_best breaks ties by grid order and skips failed cells") {
    std::vector<GridCell> cells = {cell(0.2, 0.9, 0), cell(0.2, 0.9, 1),
                                   cell(0.05, 0.9, 2, /*ok=*/false)};
    auto best = select_best(cells, 0.0);
    REQUIRE(best.has_value());
    CHECK(*best == 0);
}

TEST_CASE("select_best equals exhaustive argmin on random tables") {
    Rng rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng.index(30));
        std::vector<GridCell> cells;
        for (int i = 0; i < m; ++i)
            cells.push_back(cell(rng.uniform(0, 1), rng.uniform(-1, 1),
                                 static_cast<std::size_t>(i)));
        double tau = rng.uniform(-1, 1);

        std::optional<std::size_t> expect;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].avg_silhouette < tau) continue;
            if (!expect || cells[i].unfairness < cells[*expect].unfairness) expect = i;
        }
        CHECK(select_best(cells, tau) == expect);
    }
}

TEST_CASE("tune argument validation") {
    Dataset data = make_gaussians(1);
    TuneOptions opts;
    opts.methods = {Method::complete};
    CHECK_THROWS(tune(data, opts));  // empty grid
    opts.grid = {DissimParams::multiplicative(1, 1)};
    opts.tau = 2.0;
    CHECK_THROWS(tune(data, opts));  // tau out of range
    opts.tau = 0.0;
    opts.k = 1;
    CHECK_THROWS(tune(data, opts));  // k out of range
}

TEST_CASE("tune evaluates every method x parameter cell deterministically") {
    Eigen::MatrixXd x(12, 2), s(12, 1);
    Rng rng(3);
    for (int i = 0; i < 12; ++i) {
        x(i, 0) = (i < 6 ? -1.0 : 1.0) + 0.2 * rng.normal();
        x(i, 1) = 0.2 * rng.normal();
        s(i, 0) = i % 2 == 0 ? 1.0 : -1.0;
    }
    Dataset data(x, s);

    TuneOptions opts;
    opts.methods = {Method::kmeans_mds, Method::complete, Method::charged_ward};
    opts.grid = {DissimParams::multiplicative(0.0, 20.0),
                 DissimParams::multiplicative(2.0, 20.0),
                 DissimParams::multiplicative(5.0, 20.0)};
    opts.k = 2;
    opts.tau = -1.0;
    opts.seed = 17;
    opts.threads = 2;

    TuneResult a = tune(data, opts);
    TuneResult b = tune(data, opts);
    REQUIRE(a.methods.size() == 3);
    for (std::size_t m = 0; m < a.methods.size(); ++m) {
        REQUIRE(a.methods[m].cells.size() == 3);
        CHECK(a.methods[m].best_index == b.methods[m].best_index);
        for (std::size_t i = 0; i < 3; ++i) {
            const GridCell& ca = a.methods[m].cells[i];
            const GridCell& cb = b.methods[m].cells[i];
            CHECK(ca.ok);
            CHECK(ca.unfairness == cb.unfairness);
            CHECK(ca.avg_silhouette == cb.avg_silhouette);
        }
        // tau = -1 means every evaluated cell is feasible
        CHECK_FALSE(a.methods[m].infeasible);
    }
}

TEST_CASE("tune reports infeasibility but keeps the full curve") {
    Eigen::MatrixXd x(8, 2), s(8, 1);
    Rng rng(5);
    for (int i = 0; i < 8; ++i) {
        x(i, 0) = rng.uniform(-1, 1);
        x(i, 1) = rng.uniform(-1, 1);
        s(i, 0) = i % 2 == 0 ? 1.0 : -1.0;
    }
    Dataset data(x, s);
    TuneOptions opts;
    opts.methods = {Method::complete};
    opts.grid = {DissimParams::multiplicative(0.0, 1.0)};
    opts.k = 2;
    opts.tau = 0.9999;  // unreachable floor on scattered data
    TuneResult r = tune(data, opts);
    CHECK(r.methods[0].infeasible);
    CHECK(r.methods[0].cells.size() == 1);
    CHECK(r.methods[0].cells[0].ok);
}

TEST_CASE("stronger intensity does not worsen unfairness on the biased benchmark") {
    Dataset data = make_gaussians(2);
    TuneOptions opts;
    opts.methods = {Method::kmeans_mds};
    opts.grid = {DissimParams::multiplicative(0.0, 20.0),
                 DissimParams::multiplicative(5.0, 20.0)};
    opts.k = 2;
    opts.tau = -1.0;
    opts.seed = 4;
    TuneResult r = tune(data, opts);
    const auto& cells = r.methods[0].cells;
    REQUIRE(cells[0].ok);
    REQUIRE(cells[1].ok);
    CHECK(cells[1].unfairness <= cells[0].unfairness);
}

TEST_CASE("derive_class_counts") {
    Eigen::MatrixXd pm(3, 1);
    pm << 1, -1, 1;
    Eigen::MatrixXd c = derive_class_counts(pm);
    CHECK(c.rows() == 3);
    CHECK(c.cols() == 2);
    CHECK(c(0, 0) == 1.0);
    CHECK(c(1, 1) == 1.0);

    Eigen::MatrixXd counts(2, 3);
    counts << 1, 2, 3, 4, 5, 6;
    CHECK(derive_class_counts(counts) == counts);

    Eigen::MatrixXd real(2, 1);
    real << 0.5, -0.7;
    CHECK_THROWS(derive_class_counts(real));
}
