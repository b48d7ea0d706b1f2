#include "cone/rng.hpp"

#include <numeric>

namespace cone {

std::vector<int> Rng::sample_without_replacement(int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) {
        const auto j = static_cast<int>(below(n - i));
        out.push_back(pool[j]);
        pool[j] = pool[n - 1 - i];
    }
    return out;
}

std::vector<int> Rng::permutation(int n) {
    return sample_without_replacement(n, n);
}

}  // namespace cone
