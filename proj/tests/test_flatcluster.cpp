#include "doctest.h"

#include <algorithm>

#include "arclust/flatcluster.hpp"
#include "arclust/rng.hpp"
#include "oracles.hpp"

using namespace arclust;

TEST_CASE("kmeans separates duplicate pairs exactly") {
    Eigen::MatrixXd x(4, 2);
    x << 0, 0, 0, 0, 10, 10, 10, 10;
    KMeansResult r = kmeans(x, 2, 5, 1);
    CHECK(r.within_ss == doctest::Approx(0.0));
    CHECK(r.partition.labels[0] == r.partition.labels[1]);
    CHECK(r.partition.labels[2] == r.partition.labels[3]);
    CHECK(r.partition.labels[0] != r.partition.labels[2]);
}

TEST_CASE("kmeans with k = n drives the objective to zero") {
    Rng rng(3);
    Eigen::MatrixXd x = oracles::random_matrix(rng, 6, 2, -1, 1);
    KMeansResult r = kmeans(x, 6, 3, 9);
    CHECK(r.within_ss == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kmeans on a 2-Gaussian mixture matches a many-restart oracle") {
    Rng rng(2718);
    const int n = 50;
    Eigen::MatrixXd x(n, 2);
    for (int i = 0; i < n; ++i) {
        double cx = i < n / 2 ? -4.0 : 4.0;
        x(i, 0) = cx + rng.normal();
        x(i, 1) = rng.normal();
    }
    KMeansResult r = kmeans(x, 2, 20, 7);
    KMeansResult heavy = kmeans(x, 2, 200, 1234);
    CHECK(r.within_ss <= heavy.within_ss + 1e-6);
    CHECK(r.within_ss == doctest::Approx(heavy.within_ss).epsilon(1e-6));
}

TEST_CASE("kmeans objective never increases from its initial centers") {
    Rng rng(456);
    Eigen::MatrixXd x = oracles::random_matrix(rng, 30, 2, -3, 3);
    Eigen::MatrixXd init(3, 2);
    init = x.topRows(3);
    KMeansResult r = kmeans_from_centers(x, init);
    double init_cost = 0.0;
    for (int i = 0; i < 30; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int c = 0; c < 3; ++c)
            best = std::min(best, (x.row(i) - init.row(c)).squaredNorm());
        init_cost += best;
    }
    CHECK(r.within_ss <= init_cost + 1e-12);
    CHECK(r.within_ss == doctest::Approx(oracles::naive_kmeans_ss(x, r.partition.labels, 3))
                             .epsilon(1e-9));
}

TEST_CASE("kmeans is deterministic for a fixed seed") {
    Rng rng(10);
    Eigen::MatrixXd x = oracles::random_matrix(rng, 40, 3, -2, 2);
    KMeansResult a = kmeans(x, 4, 10, 99);
    KMeansResult b = kmeans(x, 4, 10, 99);
    CHECK(a.partition.labels == b.partition.labels);
    CHECK(a.within_ss == b.within_ss);
}

TEST_CASE("permuting rows permutes labels consistently (fixed initial centers)") {
    Rng rng(20);
    const int n = 25;
    Eigen::MatrixXd x = oracles::random_matrix(rng, n, 2, -2, 2);
    Eigen::MatrixXd init(3, 2);
    init << -2, -2, 0, 0, 2, 2;
    KMeansResult base = kmeans_from_centers(x, init);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
    Eigen::MatrixXd xp(n, 2);
    for (int i = 0; i < n; ++i) xp.row(i) = x.row(perm[i]);
    KMeansResult permuted = kmeans_from_centers(xp, init);

    for (int i = 0; i < n; ++i)
        CHECK(permuted.partition.labels[i] == base.partition.labels[perm[i]]);
}

TEST_CASE("kmeans rejects bad arguments") {
    Eigen::MatrixXd x(3, 1);
    x << 0, 1, 2;
    CHECK_THROWS(kmeans(x, 1, 5, 0));
    CHECK_THROWS(kmeans(x, 4, 5, 0));
    CHECK_THROWS(kmeans(x, 2, 0, 0));
}

TEST_CASE("kmedoids on collinear points") {
    Eigen::MatrixXd x(3, 1);
    x << 0, 1, 10;
    KMedoidsResult r = kmedoids(x, 2, 0);
    CHECK(r.objective == doctest::Approx(1.0));
    CHECK(r.medoids[1] == 2);
    CHECK(r.partition.labels[0] == r.partition.labels[1]);
    CHECK(r.partition.labels[2] != r.partition.labels[0]);
}

TEST_CASE("kmedoids with k = n has objective zero") {
    Rng rng(77);
    Eigen::MatrixXd x = oracles::random_matrix(rng, 7, 2, -2, 2);
    KMedoidsResult r = kmedoids(x, 7, 0);
    CHECK(r.objective == doctest::Approx(0.0));
}

TEST_CASE("PAM reaches the exhaustive optimum on small instances") {
    Rng rng(31415);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 10 + static_cast<int>(rng.index(6));
        Eigen::MatrixXd x = oracles::random_matrix(rng, n, 2, -3, 3);
        KMedoidsResult r = kmedoids(x, 3, 0);
        double best = oracles::exhaustive_kmedoids_objective(x, 3);
        CHECK(r.objective <= best * 1.0 + 1e-9);
        CHECK(r.objective == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("kmedoids is deterministic") {
    Rng rng(8);
    Eigen::MatrixXd x = oracles::random_matrix(rng, 30, 2, -2, 2);
    KMedoidsResult a = kmedoids(x, 4, 5);
    KMedoidsResult b = kmedoids(x, 4, 5);
    CHECK(a.partition.labels == b.partition.labels);
    CHECK(a.medoids == b.medoids);
}
