#include "stochtrend/random.hpp"

#include "stochtrend/stats.hpp"

namespace stochtrend {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t substream) noexcept
    : key_(mix64(seed ^ mix64(substream + kGolden))) {}

std::uint64_t CounterRng::next_u64() noexcept {
    ++ctr_;
    return mix64(key_ + ctr_ * kGolden);
}

double CounterRng::uniform() noexcept {
    // 53 random bits, shifted off zero
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() { return normal_quantile(uniform()); }

std::uint64_t repeat_seed(std::uint64_t base, std::uint32_t cell, std::uint32_t repeat) noexcept {
    return base ^ (static_cast<std::uint64_t>(cell) << 32) ^ static_cast<std::uint64_t>(repeat);
}

}  // namespace stochtrend
