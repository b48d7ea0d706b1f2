#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "cone/match.hpp"
#include "cone/rng.hpp"

using namespace cone;

namespace {

Eigen::MatrixXd random_matrix(int r, int c, Rng& rng) {
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = 2 * rng.uniform() - 1;
    return m;
}

// Brute-force nearest neighbors with the same (distance, index) ordering.
std::vector<int> brute_force_nn(const Eigen::MatrixXd& queries, const Eigen::MatrixXd& points) {
    std::vector<int> out(queries.rows());
    for (int i = 0; i < queries.rows(); ++i) {
        int best = 0;
        double best_d = (points.row(0) - queries.row(i)).squaredNorm();
        for (int j = 1; j < points.rows(); ++j) {
            const double d = (points.row(j) - queries.row(i)).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        out[i] = best;
    }
    return out;
}

OrthogonalTransform identity(int d) {
    OrthogonalTransform q;
    q.values = Eigen::MatrixXd::Identity(d, d);
    return q;
}

}  // namespace

TEST_CASE("kd-tree self query") {
    Eigen::MatrixXd pts(2, 3);
    pts << 0, 0, 0, 1, 1, 1;
    KdTree tree(pts);
    for (int i = 0; i < 2; ++i) {
        auto hit = tree.nearest(pts.row(i).transpose());
        CHECK(hit.index == i);
        CHECK(hit.distance == doctest::Approx(0.0));
    }
}

TEST_CASE("kd-tree matches brute force on random instances") {
    Rng rng(1);
    for (int inst = 0; inst < 20; ++inst) {
        const int n = 5 + static_cast<int>(rng.below(120));
        const int d = 1 + static_cast<int>(rng.below(10));
        Eigen::MatrixXd pts = random_matrix(n, d, rng);
        Eigen::MatrixXd queries = random_matrix(20, d, rng);
        KdTree tree(pts);
        auto oracle = brute_force_nn(queries, pts);
        for (int q = 0; q < queries.rows(); ++q)
            CHECK(tree.nearest(queries.row(q).transpose()).index == oracle[q]);
    }
}

TEST_CASE("kd-tree duplicate points tie-break to the lowest index") {
    Eigen::MatrixXd pts(5, 2);
    pts << 3, 3, 1, 1, 1, 1, 1, 1, 0, 0;
    KdTree tree(pts);
    Eigen::VectorXd q(2);
    q << 1, 1;
    CHECK(tree.nearest(q).index == 1);
    auto hits = tree.knearest(q, 3);
    REQUIRE(hits.size() == 3);
    CHECK(hits[0].index == 1);
    CHECK(hits[1].index == 2);
    CHECK(hits[2].index == 3);
}

TEST_CASE("kd-tree k-nearest matches a sorted brute-force scan") {
    Rng rng(2);
    const int n = 200, d = 4;
    Eigen::MatrixXd pts = random_matrix(n, d, rng);
    KdTree tree(pts);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd q = random_matrix(1, d, rng).row(0).transpose();
        auto hits = tree.knearest(q, 7);
        std::vector<std::pair<double, int>> all;
        for (int j = 0; j < n; ++j)
            all.emplace_back((pts.row(j).transpose() - q).norm(), j);
        std::sort(all.begin(), all.end());
        REQUIRE(hits.size() == 7);
        for (int k = 0; k < 7; ++k) CHECK(hits[k].index == all[k].second);
    }
}

TEST_CASE("kd-tree larger-scale randomized equivalence") {
    Rng rng(3);
    const int n = 1000, d = 6;
    Eigen::MatrixXd pts = random_matrix(n, d, rng);
    Eigen::MatrixXd queries = random_matrix(50, d, rng);
    KdTree tree(pts);
    auto oracle = brute_force_nn(queries, pts);
    for (int q = 0; q < queries.rows(); ++q)
        CHECK(tree.nearest(queries.row(q).transpose()).index == oracle[q]);
}

TEST_CASE("greedy_match exact copy and permutation recovery") {
    Rng rng(4);
    const int n = 25, d = 6;
    Eigen::MatrixXd y1 = random_matrix(n, d, rng);

    Alignment self = greedy_match(y1, identity(d), y1);
    for (int i = 0; i < n; ++i) {
        CHECK(self.mapping[i] == i);
        CHECK(self.distances[i] == doctest::Approx(0.0));
    }

    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = (i * 7 + 3) % n;
    Eigen::MatrixXd y2(n, d);
    for (int i = 0; i < n; ++i) y2.row(sigma[i]) = y1.row(i);
    Alignment perm = greedy_match(y1, identity(d), y2);
    CHECK(perm.mapping == sigma);
}

TEST_CASE("greedy_match equals brute force and populates top-k") {
    Rng rng(5);
    Eigen::MatrixXd y1 = random_matrix(30, 8, rng);
    Eigen::MatrixXd y2 = random_matrix(30, 8, rng);
    Alignment a = greedy_match(y1, identity(8), y2, 3);
    auto oracle = brute_force_nn(y1, y2);
    CHECK(a.mapping == oracle);
    REQUIRE(a.top_k.size() == 30);
    for (const auto& hits : a.top_k) {
        REQUIRE(hits.size() == 3);
        CHECK(hits[0].distance <= hits[1].distance);
        CHECK(hits[1].distance <= hits[2].distance);
    }

    Eigen::MatrixXd wrong = random_matrix(30, 7, rng);
    CHECK_THROWS_AS(greedy_match(y1, identity(8), wrong), std::invalid_argument);
}

TEST_CASE("greedy_match is isometry-invariant up to tie-breaks") {
    Rng rng(6);
    const int d = 5;
    Eigen::MatrixXd y1 = random_matrix(40, d, rng);
    Eigen::MatrixXd y2 = random_matrix(40, d, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(d, d, rng));
    Eigen::MatrixXd r = qr.householderQ();

    Alignment base = greedy_match(y1, identity(d), y2);
    Alignment rotated = greedy_match(y1 * r, identity(d), y2 * r);
    CHECK(base.mapping == rotated.mapping);
}

TEST_CASE("bijective_match produces a bijection close to the greedy one") {
    Rng rng(7);
    const int n = 15, d = 4;
    Eigen::MatrixXd y1 = random_matrix(n, d, rng);
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = (i * 4 + 1) % n;
    Eigen::MatrixXd y2(n, d);
    for (int i = 0; i < n; ++i) y2.row(sigma[i]) = y1.row(i);

    Alignment a = bijective_match(y1, identity(d), y2);
    std::vector<char> used(n, 0);
    for (int v : a.mapping) {
        REQUIRE(v >= 0);
        REQUIRE(v < n);
        CHECK_FALSE(used[v]);
        used[v] = 1;
    }
    CHECK(a.mapping == sigma);
}

TEST_CASE("alignment csv serialization") {
    Alignment a;
    a.mapping = {1, 0};
    a.distances = {0.5, 0.25};
    auto path = (std::filesystem::temp_directory_path() / "cone_align_test.csv").string();
    save_alignment_csv(a, path);
    std::ifstream in(path);
    std::string header, row0;
    std::getline(in, header);
    std::getline(in, row0);
    CHECK(header == "source_index,target_index,distance");
    CHECK(row0 == "0,1,0.5");
    std::remove(path.c_str());
}
