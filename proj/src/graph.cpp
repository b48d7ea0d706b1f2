#include "cone/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cone/rng.hpp"

namespace cone {

SparseGraph::SparseGraph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("SparseGraph: negative node count");
    n_ = n;
    adj_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("SparseGraph: node index out of range");
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) continue;
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    m_ = static_cast<std::int64_t>(seen.size());
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool SparseGraph::has_edge(int i, int j) const {
    const auto& nb = adj_[i];
    return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<std::pair<int, int>> SparseGraph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int i = 0; i < n_; ++i)
        for (int j : adj_[i])
            if (i < j) out.emplace_back(i, j);
    return out;
}

int SparseGraph::max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
}

std::uint64_t SparseGraph::structure_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto fnv = [&h](std::uint64_t x) {
        for (int k = 0; k < 8; ++k) {
            h ^= (x >> (8 * k)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    fnv(static_cast<std::uint64_t>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j : adj_[i])
            if (i < j) {
                fnv(static_cast<std::uint64_t>(i));
                fnv(static_cast<std::uint64_t>(j));
            }
    return h;
}

GroundTruthPermutation GroundTruthPermutation::inverse() const {
    GroundTruthPermutation out;
    out.seed = seed;
    out.perm.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out.perm[perm[i]] = static_cast<int>(i);
    return out;
}

SparseGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    std::unordered_map<std::string, int> index;
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int lineno = 0;
    auto intern = [&](const std::string& tok) {
        auto [it, inserted] = index.try_emplace(tok, static_cast<int>(labels.size()));
        if (inserted) labels.push_back(tok);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string::size_type start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#' || line[start] == '%') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ss(line);
        std::string a, b, extra;
        if (!(ss >> a >> b))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected two node identifiers");
        const int ia = intern(a);
        const int ib = intern(b);
        edges.emplace_back(ia, ib);
    }
    if (labels.empty()) throw std::runtime_error(path + ": empty graph");
    SparseGraph g(static_cast<int>(labels.size()), edges);
    g.set_labels(std::move(labels));
    return g;
}

void save_edge_list(const SparseGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    for (auto [i, j] : g.edge_list()) out << i << ' ' << j << '\n';
}

GroundTruthPermutation random_permutation(int n, std::uint64_t seed) {
    Rng rng(seed);
    GroundTruthPermutation out;
    out.seed = seed;
    out.perm = rng.permutation(n);
    return out;
}

void save_permutation_csv(const GroundTruthPermutation& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write permutation: " + path);
    out << "source_index,target_index\n";
    for (std::size_t i = 0; i < p.perm.size(); ++i) out << i << ',' << p.perm[i] << '\n';
}

GroundTruthPermutation load_permutation_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open permutation: " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::pair<int, int>> pairs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        int a, b;
        char comma;
        if (!(ss >> a >> comma >> b)) throw std::runtime_error("bad permutation row: " + line);
        pairs.emplace_back(a, b);
    }
    GroundTruthPermutation out;
    out.perm.assign(pairs.size(), -1);
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= static_cast<int>(pairs.size()))
            throw std::runtime_error("permutation index out of range");
        out.perm[a] = b;
    }
    for (int v : out.perm)
        if (v < 0) throw std::runtime_error("permutation is not a bijection");
    return out;
}

SparseGraph permute_graph(const SparseGraph& g, const GroundTruthPermutation& perm) {
    if (perm.size() != g.num_nodes())
        throw std::invalid_argument("permute_graph: permutation length mismatch");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.num_edges());
    for (auto [i, j] : g.edge_list()) edges.emplace_back(perm.perm[i], perm.perm[j]);
    return SparseGraph(g.num_nodes(), edges);
}

SparseGraph drop_edges(const SparseGraph& g, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("drop_edges: p outside [0,1]");
    Rng rng(seed);
    std::vector<std::pair<int, int>> kept;
    for (auto e : g.edge_list())  // one draw per undirected edge
        if (!rng.bernoulli(p)) kept.push_back(e);
    return SparseGraph(g.num_nodes(), kept);
}

SparseGraph pad_to_size(const SparseGraph& g, int n_target) {
    if (n_target < g.num_nodes())
        throw std::invalid_argument("pad_to_size: target smaller than graph");
    return SparseGraph(n_target, g.edge_list());
}

}  // namespace cone
