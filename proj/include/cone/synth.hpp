#ifndef CONE_SYNTH_HPP
#define CONE_SYNTH_HPP

#include <cstdint>

#include "cone/graph.hpp"

namespace cone {

// All generators are deterministic given their seed.

// Erdos-Renyi G(n, p).
SparseGraph synth_erdos_renyi(int n, double p, std::uint64_t seed);

// Random d-regular graph via pairing-model retries.
SparseGraph synth_random_regular(int n, int degree, std::uint64_t seed);

// Two cliques of size clique_n joined by a single bridge edge.
SparseGraph synth_barbell(int clique_n);

// Dispatch on a descriptor: "regular:<n>:<d>", "er:<n>:<p>", "barbell:<clique_n>".
SparseGraph synth_graph(const std::string& descriptor, std::uint64_t seed);

}  // namespace cone

#endif
