#ifndef CONE_RNG_HPP
#define CONE_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace cone {

// splitmix64; used to derive independent stage seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Distribution helpers are hand-rolled on top of mt19937_64 because the
// standard <random> distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Unbiased integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // k distinct indices from [0, n), partial Fisher-Yates order.
    std::vector<int> sample_without_replacement(int n, int k);

    std::vector<int> permutation(int n);

private:
    std::mt19937_64 gen_;
};

}  // namespace cone

#endif
