#include <stdexcept>

#include "doctest.h"

#include "cone/synth.hpp"

using namespace cone;

TEST_CASE("barbell structure") {
    SparseGraph g = synth_barbell(5);
    CHECK(g.num_nodes() == 10);
    CHECK(g.num_edges() == 2 * 10 + 1);  // two K5 plus the bridge
    CHECK(g.degree(4) == 5);             // bridge endpoint
    CHECK(g.degree(5) == 5);
    CHECK(g.degree(0) == 4);
    CHECK(g.has_edge(4, 5));
}

TEST_CASE("erdos renyi determinism") {
    SparseGraph a = synth_erdos_renyi(50, 0.1, 42);
    SparseGraph b = synth_erdos_renyi(50, 0.1, 42);
    CHECK(a.edge_list() == b.edge_list());
    SparseGraph c = synth_erdos_renyi(50, 0.1, 43);
    CHECK(a.edge_list() != c.edge_list());
}

TEST_CASE("random regular degrees") {
    SparseGraph g = synth_random_regular(100, 6, 7);
    for (int i = 0; i < 100; ++i) CHECK(g.degree(i) == 6);
    CHECK_THROWS_AS(synth_random_regular(7, 3, 1), std::invalid_argument);  // odd n*d
    CHECK_THROWS_AS(synth_random_regular(5, 5, 1), std::invalid_argument);
}

TEST_CASE("descriptor dispatch") {
    CHECK(synth_graph("regular:20:4", 1).max_degree() == 4);
    CHECK(synth_graph("er:30:0.2", 1).num_nodes() == 30);
    CHECK(synth_graph("barbell:4", 1).num_nodes() == 8);
    CHECK_THROWS_AS(synth_graph("mystery:4", 1), std::invalid_argument);
    CHECK_THROWS_AS(synth_graph("regular:20", 1), std::invalid_argument);
}
