#pragma once

#include <cmath>
#include <cstdint>

namespace tailest::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Labels keep the random streams of unrelated consumers disjoint, so adding a
// consumer never perturbs another one's draws under the same seed.
enum class StreamLabel : std::uint64_t {
    model_sample = 1,
    limit_law = 2,
    v_star = 3,
    malmquist_lhs = 4,
    malmquist_rhs = 5,
    experiment_limit = 6,
    replication_seed = 7,
};

// Counter-based generator (splitmix64). Cheap to construct, so every draw of a
// parallel batch owns its own substream and results do not depend on the
// number of worker threads.
class Stream {
public:
    explicit constexpr Stream(std::uint64_t state) noexcept : state_(state) {}

    constexpr std::uint64_t next_u64() noexcept {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform on (0,1), 52-bit resolution; never returns 0 or 1 exactly.
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    double next_exponential() noexcept { return -std::log(next_uniform()); }

private:
    std::uint64_t state_;
};

constexpr Stream substream(std::uint64_t seed, StreamLabel label, std::uint64_t index) noexcept {
    std::uint64_t h = mix64(seed + kGolden * (static_cast<std::uint64_t>(label) + 1));
    h = mix64(h + kGolden * (index + 1));
    return Stream(h);
}

// Stable per-replication seed derived from a campaign master seed.
constexpr std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t rep) noexcept {
    return substream(master_seed, StreamLabel::replication_seed, rep).next_u64();
}

} // namespace tailest::rng
