#pragma once

#include <cstdint>
#include <random>

namespace ncrest {

// splitmix64 step, used to derive independent stream seeds from one base
// seed. mt19937 is fully specified by the standard, so streams built this
// way are bit-identical across platforms and standard libraries.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Named sub-streams of a run seed. Keeping the streams separate means
// consuming one (e.g. loss draws) never shifts another (e.g. coefficients).
enum class Stream : std::uint64_t {
    RequestLoss = 1,
    ResponseLoss = 2,
    Coefficients = 3,
    Payload = 4,
};

inline std::mt19937 make_stream(std::uint64_t seed, Stream which) {
    const auto salt = static_cast<std::uint64_t>(which);
    return std::mt19937(
        static_cast<std::uint32_t>(splitmix64(seed ^ (salt * 0xD6E8FEB86659FD93ULL))));
}

// Seed for repetition `rep` of a grid row.
inline std::uint64_t rep_seed(std::uint64_t base_seed, std::uint32_t rep) {
    return splitmix64(base_seed + 0x9E3779B97F4A7C15ULL * (rep + 1ULL));
}

// Bernoulli draw without std::bernoulli_distribution (whose algorithm is
// implementation-defined); this one is reproducible everywhere.
inline bool draw_loss(std::mt19937& rng, double prob) {
    return static_cast<double>(rng()) * 0x1p-32 < prob;
}

// Uniform integer in [lo, hi] via modulo; the tiny modulo bias is
// irrelevant here and determinism matters more.
inline std::uint32_t draw_uniform(std::mt19937& rng, std::uint32_t lo, std::uint32_t hi) {
    return lo + rng() % (hi - lo + 1);
}

}  // namespace ncrest
