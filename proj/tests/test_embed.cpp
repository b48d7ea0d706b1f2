#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"

#include "cone/embed.hpp"
#include "cone/graph.hpp"
#include "cone/rng.hpp"
#include "cone/synth.hpp"

using namespace cone;

namespace {

double spectral_norm(const Eigen::MatrixXd& m) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
}

SparseGraph random_graph(int n, double p, std::uint64_t seed) {
    return synth_erdos_renyi(n, p, seed);
}

}  // namespace

TEST_CASE("netmf exact on a single edge, w=1") {
    // vol=2, D^-1 A swaps the two nodes, M = [[0,2],[2,0]], M' = log-clip.
    SparseGraph g(2, {{0, 1}});
    EmbedConfig cfg;
    cfg.window = 1;
    cfg.negative = 1;
    Eigen::MatrixXd m = netmf_matrix_exact(g, cfg);
    CHECK(m(0, 0) == doctest::Approx(0.0));
    CHECK(m(0, 1) == doctest::Approx(std::log(2.0)));
    CHECK(m(1, 0) == doctest::Approx(std::log(2.0)));
    CHECK(m(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("netmf exact entries are nonnegative") {
    SparseGraph g = random_graph(15, 0.3, 3);
    EmbedConfig cfg;
    Eigen::MatrixXd m = netmf_matrix_exact(g, cfg);
    CHECK(m.minCoeff() >= 0.0);
}

TEST_CASE("netmf exact matches a brute-force matrix-power oracle on a triangle, w=2") {
    SparseGraph g(3, {{0, 1}, {1, 2}, {0, 2}});
    EmbedConfig cfg;
    cfg.window = 2;

    // Independent oracle: explicit dense powers of D^-1 A.
    Eigen::MatrixXd a(3, 3);
    a << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    Eigen::MatrixXd walk = a / 2.0;
    Eigen::MatrixXd sum = walk + walk * walk;
    Eigen::MatrixXd expected =
        ((6.0 / 2.0) * sum * 0.5).array().max(1.0).log().matrix();

    Eigen::MatrixXd m = netmf_matrix_exact(g, cfg);
    CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("netmf approx equals exact when k_eig = n") {
    for (std::uint64_t seed : {1, 2, 3}) {
        SparseGraph g = random_graph(10, 0.4, seed);
        EmbedConfig cfg;
        cfg.k_eig = g.num_nodes();
        Eigen::MatrixXd ex = netmf_matrix_exact(g, cfg);
        Eigen::MatrixXd ap = netmf_matrix_approx(g, cfg);
        CHECK((ex - ap).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("netmf approx k_eig=1 on K4 is rank-1 before clip-log") {
    // K4 is regular; its normalized adjacency has a single dominant eigenpair,
    // so the one-eigenpair window sum must be a constant (rank-1) matrix.
    SparseGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    EmbedConfig cfg;
    cfg.k_eig = 1;
    cfg.window = 2;
    Eigen::MatrixXd m = netmf_matrix_approx(k4, cfg);
    // With all entries of the rank-1 M equal, M' is constant too.
    CHECK((m.array() - m(0, 0)).abs().maxCoeff() < 1e-12);
}

TEST_CASE("netmf rejects edgeless graphs, embed rejects d > n") {
    SparseGraph g(3, {});
    EmbedConfig cfg;
    CHECK_THROWS_AS(netmf_matrix_exact(g, cfg), std::invalid_argument);
    CHECK_THROWS_AS(netmf_matrix_approx(g, cfg), std::invalid_argument);
    SparseGraph small(3, {{0, 1}});
    cfg.dim = 4;
    cfg.k_eig = 3;
    CHECK_THROWS_AS(embed_graph(small, cfg, EmbedMode::Exact), std::invalid_argument);
}

TEST_CASE("embed_graph shape, normalization, determinism") {
    SparseGraph g = random_graph(20, 0.25, 5);
    EmbedConfig cfg;
    cfg.dim = 8;
    cfg.k_eig = 20;
    Eigen::MatrixXd y = embed_graph(g, cfg, EmbedMode::Approx);
    CHECK(y.rows() == 20);
    CHECK(y.cols() == 8);
    CHECK(spectral_norm(y) == doctest::Approx(1.0).epsilon(1e-8));

    Eigen::MatrixXd y2 = embed_graph(g, cfg, EmbedMode::Approx);
    CHECK(y == y2);  // bit-identical

    cfg.norm = MatrixNorm::Frobenius;
    Eigen::MatrixXd yf = embed_graph(g, cfg, EmbedMode::Approx);
    CHECK(yf.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("embedding permutation equivariance up to column sign") {
    SparseGraph g = random_graph(20, 0.3, 17);
    GroundTruthPermutation sigma = random_permutation(20, 4);
    SparseGraph gp = permute_graph(g, sigma);

    EmbedConfig cfg;
    cfg.dim = 6;
    cfg.k_eig = 20;
    cfg.window = 5;
    Eigen::MatrixXd y = embed_graph(g, cfg, EmbedMode::Exact);
    Eigen::MatrixXd yp = embed_graph(gp, cfg, EmbedMode::Exact);

    // Row i of y should equal row sigma[i] of yp up to per-column sign.
    for (int c = 0; c < cfg.dim; ++c) {
        double best = 1e18;
        for (double s : {1.0, -1.0}) {
            double worst = 0;
            for (int i = 0; i < 20; ++i)
                worst = std::max(worst, std::abs(y(i, c) - s * yp(sigma.perm[i], c)));
            best = std::min(best, worst);
        }
        CHECK(best < 1e-5);
    }
}

TEST_CASE("neighbors in a barbell graph embed closer than opposite cliques") {
    SparseGraph g = synth_barbell(5);
    EmbedConfig cfg;
    cfg.dim = 4;
    cfg.k_eig = 10;
    Eigen::MatrixXd y = embed_graph(g, cfg, EmbedMode::Exact);
    auto cosine = [&](int a, int b) {
        return y.row(a).dot(y.row(b)) / (y.row(a).norm() * y.row(b).norm());
    };
    // node 1 and 2 share a clique; node 1 and 7 are in opposite cliques
    CHECK(cosine(1, 2) > cosine(1, 7));
    CHECK(cosine(6, 8) > cosine(2, 8));
}

TEST_CASE("isolated nodes embed to zero rows") {
    SparseGraph g = pad_to_size(random_graph(10, 0.4, 2), 12);
    EmbedConfig cfg;
    cfg.dim = 5;
    cfg.k_eig = 12;
    Eigen::MatrixXd y = embed_graph(g, cfg, EmbedMode::Approx);
    CHECK(y.row(10).norm() == doctest::Approx(0.0));
    CHECK(y.row(11).norm() == doctest::Approx(0.0));
}

TEST_CASE("embedding cache round trip") {
    SparseGraph g = random_graph(12, 0.3, 8);
    EmbedConfig cfg;
    cfg.dim = 4;
    cfg.k_eig = 12;
    Eigen::MatrixXd y = embed_graph(g, cfg, EmbedMode::Approx);
    auto path = (std::filesystem::temp_directory_path() /
                 embedding_cache_name(g, cfg, EmbedMode::Approx))
                    .string();
    save_embedding_cache(path, y);
    Eigen::MatrixXd loaded;
    REQUIRE(load_embedding_cache(path, loaded));
    CHECK(loaded == y);
    std::remove(path.c_str());
    CHECK_FALSE(load_embedding_cache(path, loaded));
}
