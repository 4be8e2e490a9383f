#pragma once

#include <cstdint>
#include <limits>

namespace ramanujan {

// SplitMix64.  Cheap to construct, so every stream item can own a generator
// derived from (seed, index) and results do not depend on how an index range
// is split across workers.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Generator for item `index` of a stream seeded with `seed`.
inline SplitMix64 indexed_rng(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed);
    const std::uint64_t a = mix();
    SplitMix64 mix_index(index ^ a);
    return SplitMix64(a ^ mix_index());
}

// Uniform double in [0, 1) built from the top 53 bits; unlike
// std::uniform_real_distribution this is identical across standard libraries.
template <typename Gen>
double unit_uniform(Gen& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace ramanujan
