#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

// Deterministic randomness utilities. Every random draw in the library goes
// through these helpers so that results are bit-reproducible across runs,
// platforms and thread counts. std::mt19937_64's output sequence is fixed by
// the standard; the distributions below are our own because the standard
// library's distribution algorithms are implementation-defined.
namespace classsplom::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Collapses (seed, part, part, ...) into one engine seed. Used to derive
// independent substreams, e.g. per bootstrap replicate or per class, so that
// results do not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t state = seed;
    std::uint64_t mixed = splitmix64(state);
    for (std::uint64_t p : parts) {
        state ^= p + 0x9e3779b97f4a7c15ull + (state << 6) + (state >> 2);
        mixed = splitmix64(state);
    }
    return mixed;
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> parts = {}) {
    return std::mt19937_64(derive_seed(seed, parts));
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& eng, std::uint64_t n) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Standard normal draws via the Marsaglia polar method.
class NormalSampler {
public:
    explicit NormalSampler(std::mt19937_64 engine) : eng_(std::move(engine)) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01(eng_) - 1.0;
            v = 2.0 * uniform01(eng_) - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        has_spare_ = true;
        return u * factor;
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace classsplom::rng
