#include "cone/synth.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "cone/rng.hpp"

namespace cone {

SparseGraph synth_erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("synth_erdos_renyi: n must be >= 2");
    if (p < 0 || p > 1) throw std::invalid_argument("synth_erdos_renyi: p outside [0,1]");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return SparseGraph(n, edges);
}

SparseGraph synth_random_regular(int n, int degree, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("synth_random_regular: n must be >= 2");
    if (degree < 1 || degree >= n)
        throw std::invalid_argument("synth_random_regular: infeasible degree");
    if ((static_cast<std::int64_t>(n) * degree) % 2 != 0)
        throw std::invalid_argument("synth_random_regular: n*degree must be even");

    // Pairing model, built incrementally: match the first free stub with a
    // random stub that creates neither a self-loop nor a parallel edge, and
    // restart the attempt on a dead end. Wholesale rejection of a uniform
    // pairing would almost never accept at moderate degree.
    Rng rng(seed);
    const std::size_t n_stubs = static_cast<std::size_t>(n) * degree;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(n_stubs);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < degree; ++k) stubs.push_back(i);
        for (int i = static_cast<int>(n_stubs) - 1; i > 0; --i)
            std::swap(stubs[i], stubs[rng.below(i + 1)]);

        std::set<std::pair<int, int>> seen;
        bool ok = true;
        while (!stubs.empty()) {
            const int a = stubs.back();
            stubs.pop_back();
            // candidate partners, sampled without replacement
            bool matched = false;
            for (std::size_t probes = stubs.size(); probes > 0 && !matched; --probes) {
                const std::size_t j = rng.below(probes);
                int b = stubs[j];
                if (b != a && !seen.count({std::min(a, b), std::max(a, b)})) {
                    seen.insert({std::min(a, b), std::max(a, b)});
                    stubs[j] = stubs.back();
                    stubs.pop_back();
                    matched = true;
                } else {
                    std::swap(stubs[j], stubs[probes - 1]);  // exclude from later probes
                }
            }
            if (!matched) {
                ok = false;
                break;
            }
        }
        if (ok) return SparseGraph(n, {seen.begin(), seen.end()});
    }
    throw std::runtime_error("synth_random_regular: pairing model failed to converge");
}

SparseGraph synth_barbell(int clique_n) {
    if (clique_n < 2) throw std::invalid_argument("synth_barbell: clique size must be >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int side = 0; side < 2; ++side) {
        const int base = side * clique_n;
        for (int i = 0; i < clique_n; ++i)
            for (int j = i + 1; j < clique_n; ++j) edges.emplace_back(base + i, base + j);
    }
    edges.emplace_back(clique_n - 1, clique_n);  // bridge
    return SparseGraph(2 * clique_n, edges);
}

SparseGraph synth_graph(const std::string& descriptor, std::uint64_t seed) {
    std::istringstream ss(descriptor);
    std::string kind;
    std::getline(ss, kind, ':');
    if (kind == "regular") {
        int n, d;
        char c;
        if (!(ss >> n >> c >> d))
            throw std::invalid_argument("synth_graph: expected regular:<n>:<d>");
        return synth_random_regular(n, d, seed);
    }
    if (kind == "er") {
        int n;
        double p;
        char c;
        if (!(ss >> n >> c >> p))
            throw std::invalid_argument("synth_graph: expected er:<n>:<p>");
        return synth_erdos_renyi(n, p, seed);
    }
    if (kind == "barbell") {
        int cn;
        if (!(ss >> cn)) throw std::invalid_argument("synth_graph: expected barbell:<clique_n>");
        return synth_barbell(cn);
    }
    throw std::invalid_argument("synth_graph: unknown generator '" + kind + "'");
}

}  // namespace cone
