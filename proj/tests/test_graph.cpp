#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "cone/graph.hpp"
#include "cone/rng.hpp"

using namespace cone;

namespace {

std::string write_temp(const std::string& contents) {
    static int counter = 0;
    auto path = std::filesystem::temp_directory_path() /
                ("cone_graph_test_" + std::to_string(counter++) + ".txt");
    std::ofstream out(path);
    out << contents;
    return path.string();
}

}  // namespace

TEST_CASE("load_edge_list basic relabeling") {
    auto path = write_temp("a b\nb c\n");
    SparseGraph g = load_edge_list(path);
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.labels() == std::vector<std::string>{"a", "b", "c"});
    std::remove(path.c_str());
}

TEST_CASE("load_edge_list comments, commas, duplicates, self-loops") {
    auto path = write_temp("# comment\n% other comment\na,b\na b\nb a\nc c\nc a\n");
    SparseGraph g = load_edge_list(path);
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_edges() == 2);  // a-b deduped, c-c dropped
    std::remove(path.c_str());
}

TEST_CASE("load_edge_list errors") {
    auto bad = write_temp("a\n");
    CHECK_THROWS_WITH_AS(load_edge_list(bad), doctest::Contains(":1:"), std::runtime_error);
    std::remove(bad.c_str());
    auto empty = write_temp("# nothing\n");
    CHECK_THROWS_AS(load_edge_list(empty), std::runtime_error);
    std::remove(empty.c_str());
    CHECK_THROWS_AS(load_edge_list("/nonexistent/file"), std::runtime_error);
}

TEST_CASE("arenas edge list counts") {
    // Only runs when the real dataset has been placed under data/.
    if (!std::filesystem::exists("data/arenas.edges")) return;
    SparseGraph g = load_edge_list("data/arenas.edges");
    CHECK(g.num_nodes() == 1133);
    CHECK(g.num_edges() == 5451);
}

TEST_CASE("permute_graph identity and explicit relabeling") {
    SparseGraph path3(3, {{0, 1}, {1, 2}});
    GroundTruthPermutation id{{0, 1, 2}, 0};
    SparseGraph same = permute_graph(path3, id);
    CHECK(same.edge_list() == path3.edge_list());

    GroundTruthPermutation p{{2, 0, 1}, 0};
    SparseGraph out = permute_graph(path3, p);
    CHECK(out.has_edge(2, 0));
    CHECK(out.has_edge(0, 1));
    CHECK(out.num_edges() == 2);

    GroundTruthPermutation wrong{{1, 0}, 0};
    CHECK_THROWS_AS(permute_graph(path3, wrong), std::invalid_argument);
}

TEST_CASE("permute_graph preserves degree multiset and inverts") {
    Rng rng(7);
    std::vector<std::pair<int, int>> edges;
    const int n = 40;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(0.1)) edges.emplace_back(i, j);
    SparseGraph g(n, edges);

    GroundTruthPermutation sigma = random_permutation(n, 123);
    SparseGraph gp = permute_graph(g, sigma);

    std::vector<int> d1, d2;
    for (int i = 0; i < n; ++i) {
        d1.push_back(g.degree(i));
        d2.push_back(gp.degree(i));
    }
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    CHECK(d1 == d2);

    SparseGraph back = permute_graph(gp, sigma.inverse());
    CHECK(back.edge_list() == g.edge_list());
}

TEST_CASE("drop_edges zero and full removal") {
    SparseGraph path3(3, {{0, 1}, {1, 2}});
    CHECK(drop_edges(path3, 0.0, 1).edge_list() == path3.edge_list());
    SparseGraph gone = drop_edges(path3, 1.0, 1);
    CHECK(gone.num_nodes() == 3);
    CHECK(gone.num_edges() == 0);
    CHECK_THROWS_AS(drop_edges(path3, 1.5, 1), std::invalid_argument);
}

TEST_CASE("drop_edges deterministic and binomially distributed") {
    Rng rng(11);
    std::vector<std::pair<int, int>> edges;
    const int n = 60;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(0.2)) edges.emplace_back(i, j);
    SparseGraph g(n, edges);

    CHECK(drop_edges(g, 0.3, 42).edge_list() == drop_edges(g, 0.3, 42).edge_list());

    const double p = 0.05;
    const int trials = 200;
    double total = 0;
    for (int s = 0; s < trials; ++s) total += drop_edges(g, p, 1000 + s).num_edges();
    const double m = static_cast<double>(g.num_edges());
    const double expect = m * (1 - p);
    const double sigma = std::sqrt(m * p * (1 - p) / trials);
    CHECK(std::abs(total / trials - expect) < 3 * sigma + 1e-9);
}

TEST_CASE("pad_to_size") {
    SparseGraph path3(3, {{0, 1}, {1, 2}});
    CHECK(pad_to_size(path3, 3).num_nodes() == 3);
    SparseGraph padded = pad_to_size(path3, 5);
    CHECK(padded.num_nodes() == 5);
    CHECK(padded.degree(3) == 0);
    CHECK(padded.degree(4) == 0);
    CHECK(padded.degree_sum() == path3.degree_sum());
    CHECK_THROWS_AS(pad_to_size(path3, 2), std::invalid_argument);
}

TEST_CASE("permutation csv round trip") {
    GroundTruthPermutation p = random_permutation(20, 5);
    auto path = write_temp("");
    save_permutation_csv(p, path);
    GroundTruthPermutation q = load_permutation_csv(path);
    CHECK(q.perm == p.perm);
    std::remove(path.c_str());
}

TEST_CASE("random_permutation is a bijection") {
    GroundTruthPermutation p = random_permutation(100, 9);
    std::vector<int> seen(100, 0);
    for (int v : p.perm) {
        REQUIRE(v >= 0);
        REQUIRE(v < 100);
        ++seen[v];
    }
    for (int c : seen) CHECK(c == 1);
}
