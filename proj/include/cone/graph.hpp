#ifndef CONE_GRAPH_HPP
#define CONE_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cone {

// Undirected, unweighted graph over a dense 0-based index space.
// Immutable after construction; adjacency lists are kept sorted.
class SparseGraph {
public:
    SparseGraph() = default;
    // Edges may appear in either orientation and may contain duplicates;
    // self-loops are rejected.
    SparseGraph(int n, const std::vector<std::pair<int, int>>& edges);

    int num_nodes() const { return n_; }
    std::int64_t num_edges() const { return m_; }
    int degree(int i) const { return static_cast<int>(adj_[i].size()); }
    const std::vector<int>& neighbors(int i) const { return adj_[i]; }
    bool has_edge(int i, int j) const;

    // Unordered edges (i < j), sorted lexicographically.
    std::vector<std::pair<int, int>> edge_list() const;

    int max_degree() const;
    std::int64_t degree_sum() const { return 2 * m_; }

    // Original node labels, when the graph was loaded from a file.
    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }

    // FNV-1a over (n, sorted edge list); used as an embedding cache key.
    std::uint64_t structure_hash() const;

private:
    int n_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::string> labels_;
};

// Bijection on [0, n) plus the seed that generated it.
struct GroundTruthPermutation {
    std::vector<int> perm;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(perm.size()); }
    GroundTruthPermutation inverse() const;
};

// Parses a whitespace- or comma-separated edge list; '#'/'%' start comments.
// Node labels are mapped to contiguous indices in first-seen order.
SparseGraph load_edge_list(const std::string& path);

void save_edge_list(const SparseGraph& g, const std::string& path);

// Uniformly random permutation, Fisher-Yates with an explicit generator so
// output is stable across standard libraries.
GroundTruthPermutation random_permutation(int n, std::uint64_t seed);

void save_permutation_csv(const GroundTruthPermutation& p, const std::string& path);
GroundTruthPermutation load_permutation_csv(const std::string& path);

// Relabels: edge (i,j) in g becomes (perm[i], perm[j]).
SparseGraph permute_graph(const SparseGraph& g, const GroundTruthPermutation& perm);

// Each undirected edge kept independently with probability 1-p.
// Node set unchanged; isolated nodes remain.
SparseGraph drop_edges(const SparseGraph& g, double p, std::uint64_t seed);

// Appends degree-0 nodes until the graph has n_target nodes.
SparseGraph pad_to_size(const SparseGraph& g, int n_target);

}  // namespace cone

#endif
