#pragma once

#include <cstdint>

namespace stochtrend {

/// SplitMix64 output finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Counter-based generator: draw i is a pure function of (key, i), so any
/// stream can be replayed or split without shared state.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t substream) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;
    /// Standard normal by inversion.
    double normal();

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return ctr_; }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

/// Per-repeat seed: base ^ (cell << 32) ^ repeat. Cells and repeats occupy
/// disjoint bit ranges, so distinct (cell, repeat) pairs never collide.
std::uint64_t repeat_seed(std::uint64_t base, std::uint32_t cell, std::uint32_t repeat) noexcept;

}  // namespace stochtrend
