#include "doctest.h"

#include <cmath>

#include "arclust/dissim.hpp"
#include "arclust/rng.hpp"
#include "oracles.hpp"

using namespace arclust;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

const Eigen::MatrixXd kOne = Eigen::MatrixXd::Constant(1, 1, 1.0);
const Eigen::MatrixXd kZero = Eigen::MatrixXd::Zero(1, 1);

}  // namespace

TEST_CASE("delta1 pointwise") {
    auto x1 = vec({0, 0}), x2 = vec({1, 0});
    // same class: c(1 + s1 s2) + |dx|^2 with c = 1
    CHECK(delta1(x1, vec({1}), x2, vec({1}), kOne, kOne) == doctest::Approx(3.0).epsilon(1e-15));
    // different classes recover the plain squared distance
    CHECK(delta1(x1, vec({1}), x2, vec({-1}), kOne, kOne) == doctest::Approx(1.0).epsilon(1e-15));
    // unperturbed
    CHECK(delta1(x1, vec({1}), x2, vec({-1}), kZero, kZero) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS(delta1(x1, vec({1}), vec({1}), vec({1}), kOne, kOne));
    Eigen::VectorXd nan = vec({std::nan("")});
    CHECK_THROWS(delta1(vec({0}), vec({1}), nan, vec({1}), kOne, kOne));
}

TEST_CASE("delta2 pointwise") {
    auto x1 = vec({0, 0}), x2 = vec({1, 1});
    double d2 = 2.0;
    // equal classes: exactly (1 + u) |dx|^2
    CHECK(delta2(x1, vec({1}), x2, vec({1}), 0.1, 100.0) ==
          doctest::Approx(1.1 * d2).epsilon(1e-15));
    CHECK(delta2(x1, vec({1}), x2, vec({-1}), 0.0, 5.0) == doctest::Approx(d2).epsilon(1e-15));
    // |s1-s2|^2 = 4: factor 1 + 0.1 e^{-400}
    double expect = 4.0 * (1.0 + 0.1 * std::exp(-400.0));
    auto y1 = vec({0, 0}), y2 = vec({2, 0});
    CHECK(delta2(y1, vec({1}), y2, vec({-1}), 0.1, 100.0) ==
          doctest::Approx(expect).epsilon(1e-15));
    CHECK_THROWS(delta2(x1, vec({1}), x2, vec({1}), -0.1, 1.0));
    CHECK_THROWS(delta2(x1, vec({1}), x2, vec({1}), 0.1, -1.0));
}

TEST_CASE("delta3 pointwise") {
    auto x = vec({0.5, -2});
    CHECK(delta3(x, vec({1}), x, vec({1}), 3.0) == 0.0);
    // s1 = 1, s2 = -1: |s1 - s2|^2 = 4, so x1 = x2 gives -4u
    CHECK(delta3(x, vec({1}), x, vec({-1}), 1.0) == doctest::Approx(-4.0).epsilon(1e-15));
    auto x2 = vec({1.5, -2});
    CHECK(delta3(x, vec({1}), x2, vec({-1}), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS(delta3(x, vec({1}), x, vec({1}), -0.5));
}

TEST_CASE("delta4 pointwise") {
    auto x1 = vec({0, 0}), x2 = vec({1, 0});
    CHECK(delta4(x1, vec({1}), x1, vec({1}), kOne, 0.3, 10.0, 1.0) == 0.0);

    double repel = (1.0 + 0.1 * (1.0 - std::exp(-100.0)) * std::exp(-1.0)) * 1.0;
    CHECK(delta4(x1, vec({1}), x2, vec({1}), kOne, 0.1, 100.0, 1.0) ==
          doctest::Approx(repel).epsilon(1e-15));
    double attract = (1.0 - 0.1 * (1.0 - std::exp(-100.0)) * std::exp(-1.0)) * 1.0;
    CHECK(delta4(x1, vec({1}), x2, vec({-1}), kOne, 0.1, 100.0, 1.0) ==
          doctest::Approx(attract).epsilon(1e-15));

    // sign(0) = 0: zero interaction leaves the distance untouched
    CHECK(delta4(x1, vec({1}), x2, vec({1}), kZero, 0.9, 10.0, 1.0) == 1.0);

    CHECK_THROWS(delta4(x1, vec({1}), x2, vec({1}), kOne, 1.5, 1.0, 1.0));
    CHECK_THROWS(delta4(x1, vec({1}), x2, vec({1}), kOne, -0.1, 1.0, 1.0));
}

TEST_CASE("unperturbed parameters reduce every family to the Euclidean base") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 1 + static_cast<int>(rng.index(4));
        int p = 1 + static_cast<int>(rng.index(3));
        Eigen::VectorXd x1 = oracles::random_matrix(rng, d, 1, -3, 3);
        Eigen::VectorXd x2 = oracles::random_matrix(rng, d, 1, -3, 3);
        Eigen::VectorXd s1 = oracles::random_matrix(rng, p, 1, -2, 2);
        Eigen::VectorXd s2 = oracles::random_matrix(rng, p, 1, -2, 2);
        Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(p, p);
        double sq = (x1 - x2).squaredNorm();
        double dist = (x1 - x2).norm();
        CHECK(delta1(x1, s1, x2, s2, zero, zero) == doctest::Approx(sq).epsilon(1e-12));
        CHECK(delta2(x1, s1, x2, s2, 0.0, rng.uniform(0, 5)) ==
              doctest::Approx(sq).epsilon(1e-12));
        CHECK(delta3(x1, s1, x2, s2, 0.0) == doctest::Approx(sq).epsilon(1e-12));
        CHECK(delta4(x1, s1, x2, s2, oracles::random_symmetric(rng, p, -1, 1), 0.0,
                     rng.uniform(0, 5), rng.uniform(0, 2)) ==
              doctest::Approx(dist).epsilon(1e-12));
    }
}

TEST_CASE("delta2 same-class value is strictly increasing in u") {
    auto x1 = vec({0, 0}), x2 = vec({2, 1}), s = vec({1});
    double prev = -1.0;
    for (double u = 0.0; u <= 4.0; u += 0.25) {
        double v = delta2(x1, s, x2, s, u, 7.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("delta4 bounds and locality") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        int p = 1 + static_cast<int>(rng.index(3));
        Eigen::VectorXd x1 = oracles::random_matrix(rng, 2, 1, -3, 3);
        Eigen::VectorXd x2 = oracles::random_matrix(rng, 2, 1, -3, 3);
        Eigen::VectorXd s1 = oracles::random_matrix(rng, p, 1, -1, 1);
        Eigen::VectorXd s2 = oracles::random_matrix(rng, p, 1, -1, 1);
        Eigen::MatrixXd v_mat = oracles::random_symmetric(rng, p, -1, 1);
        double u = rng.uniform(0, 1), v = rng.uniform(0, 8), w = rng.uniform(0, 3);
        double dist = (x1 - x2).norm();
        double val = delta4(x1, s1, x2, s2, v_mat, u, v, w);
        CHECK(val >= (1.0 - u) * dist - 1e-12);
        CHECK(val <= (1.0 + u) * dist + 1e-12);
    }

    // relative perturbation is non-increasing in the distance
    auto s = vec({1});
    double prev_rel = 1e100;
    for (double dist = 0.25; dist <= 6.0; dist += 0.25) {
        double val = delta4(vec({0, 0}), s, vec({dist, 0}), s, kOne, 0.6, 50.0, 0.8);
        double rel = std::abs(val / dist - 1.0);
        CHECK(rel <= prev_rel + 1e-14);
        prev_rel = rel;
    }
}

TEST_CASE("dissim_matrix basics") {
    Eigen::MatrixXd x(2, 2), s(2, 1);
    x << 1, 2, 1, 2;
    s << 1, -1;
    Dataset dup(x, s);
    DissimMatrix m = dissim_matrix(dup, DissimParams::multiplicative(2.0, 3.0));
    CHECK(m.values == Eigen::MatrixXd::Zero(2, 2));
    CHECK(m.shift_applied == 0.0);
    CHECK_FALSE(m.sqrt_applied);

    // delta1 with U = V = 0 is the squared-distance matrix
    Eigen::MatrixXd x3(3, 2), s3(3, 1);
    x3 << 0, 0, 1, 0, 0, 2;
    s3 << 1, -1, 1;
    Dataset d3(x3, s3);
    DissimMatrix m1 = dissim_matrix(
        d3, DissimParams::additive(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1)));
    CHECK(m1.values(0, 1) == doctest::Approx(1.0));
    CHECK(m1.values(0, 2) == doctest::Approx(4.0));
    CHECK(m1.values(1, 2) == doctest::Approx(5.0));
    CHECK(m1.values(0, 0) == 0.0);
}

TEST_CASE("dissim_matrix equals pointwise recomputation and is exactly symmetric") {
    Rng rng(2024);
    Eigen::MatrixXd x = oracles::random_matrix(rng, 10, 3, -2, 2);
    Eigen::MatrixXd s = oracles::random_matrix(rng, 10, 2, -1, 1);
    Dataset data(x, s);
    for (Family fam : {Family::delta1, Family::delta2, Family::delta3, Family::delta4}) {
        DissimParams params = oracles::random_params(rng, fam, 2);
        DissimMatrix m = dissim_matrix(data, params);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                CHECK(m.values(i, j) == m.values(j, i));  // bitwise
                double direct = eval_dissim(params, x.row(i), s.row(i), x.row(j), s.row(j));
                CHECK(m.values(i, j) == doctest::Approx(direct).epsilon(1e-12));
            }
    }
}

TEST_CASE("delta1 diagonal stores the self-dissimilarity") {
    Eigen::MatrixXd x(2, 1), s(2, 1);
    x << 0, 1;
    s << 1, -1;
    Dataset data(x, s);
    DissimMatrix m = dissim_matrix(data, DissimParams::additive(kOne, kOne));
    // 1'U1 + s_i' V s_i = 1 + 1
    CHECK(m.values(0, 0) == doctest::Approx(2.0));
    CHECK(m.values(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("prepare_for_mds") {
    Eigen::MatrixXd x(3, 1), s(3, 1);
    x << 0, 1, 3;
    s << 1, -1, 1;
    Dataset data(x, s);

    SUBCASE("all-positive delta2 matrix: sqrt only, no shift") {
        DissimMatrix m = dissim_matrix(data, DissimParams::multiplicative(0.5, 1.0));
        DissimMatrix prep = prepare_for_mds(m, 0.01);
        CHECK(prep.shift_applied == 0.0);
        CHECK(prep.sqrt_applied);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(prep.values(i, j) ==
                      doctest::Approx(std::sqrt(m.values(i, j))).epsilon(1e-15));
    }

    SUBCASE("negative delta3 entries force a shift before the sqrt") {
        DissimMatrix m = dissim_matrix(data, DissimParams::subtractive(2.0));
        // min off-diagonal: |x0-x1|^2 - 2*4 = 1 - 8 = -7
        DissimMatrix prep = prepare_for_mds(m, 0.01);
        CHECK(prep.shift_applied == doctest::Approx(7.01));
        CHECK(prep.sqrt_applied);
        CHECK(prep.values(0, 1) == doctest::Approx(std::sqrt(-7.0 + 7.01)));
        CHECK((prep.values.array() >= 0.0).all());
        // diagonal participates in the shift
        CHECK(prep.values(0, 0) == doctest::Approx(std::sqrt(7.01)));
    }

    SUBCASE("delta4 stays unrooted") {
        DissimMatrix m = dissim_matrix(data, DissimParams::local(kOne, 0.5, 10.0, 0.1));
        DissimMatrix prep = prepare_for_mds(m, 0.01);
        CHECK_FALSE(prep.sqrt_applied);
        // delta4 >= (1-u) dist > 0 off-diagonal here, but the zero diagonal is untouched
        CHECK(prep.values(0, 1) == doctest::Approx(m.values(0, 1) + prep.shift_applied));
    }

    SUBCASE("epsilon must be positive; default epsilon is range-scaled") {
        DissimMatrix m = dissim_matrix(data, DissimParams::multiplicative(0.5, 1.0));
        CHECK_THROWS(prepare_for_mds(m, 0.0));
        CHECK(default_shift_epsilon(m.values) ==
              doctest::Approx(1e-8 * (m.values.maxCoeff() - m.values.minCoeff())));
        Eigen::MatrixXd flat = Eigen::MatrixXd::Zero(2, 2);
        CHECK(default_shift_epsilon(flat) == 1e-12);
    }

    SUBCASE("idempotent once rooted") {
        DissimMatrix m = dissim_matrix(data, DissimParams::multiplicative(0.5, 1.0));
        DissimMatrix prep = prepare_for_mds(m);
        DissimMatrix again = prepare_for_mds(prep);
        CHECK(again.values == prep.values);
    }
}

TEST_CASE("prepare_for_mds leaves strictly positive off-diagonals after a shift") {
    Rng rng(31);
    Eigen::MatrixXd x = oracles::random_matrix(rng, 8, 2, -1, 1);
    Eigen::MatrixXd s = oracles::random_matrix(rng, 8, 1, -1, 1);
    Dataset data(x, s);
    DissimMatrix m = dissim_matrix(data, DissimParams::subtractive(1.5));
    REQUIRE(m.values.minCoeff() < 0.0);
    DissimMatrix prep = prepare_for_mds(m);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (i != j) CHECK(prep.values(i, j) > 0.0);
}
