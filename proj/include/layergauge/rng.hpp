#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <utility>
#include <vector>

namespace layergauge {

// Generator identity recorded in configs and reports so results can be
// replicated; bump the suffix if the stream definition ever changes.
inline constexpr std::string_view kRngIdentity = "splitmix64+box-muller-v1";

// splitmix64 finalizer (Steele/Lea/Flood), also used as a 64-bit hash.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

namespace detail {
constexpr std::uint64_t seedSalt(std::uint64_t v) { return v; }
constexpr std::uint64_t seedSalt(std::int64_t v) { return static_cast<std::uint64_t>(v); }
constexpr std::uint64_t seedSalt(int v) { return static_cast<std::uint64_t>(v); }
constexpr std::uint64_t seedSalt(std::string_view s) { return fnv1a64(s); }
}  // namespace detail

// Derives an independent substream seed from a base seed and a salt tuple.
// Distinct tuples map to distinct seeds for all practical purposes.
template <typename... Parts>
constexpr std::uint64_t deriveSeed(std::uint64_t base, Parts... parts) {
    std::uint64_t h = base;
    ((h = mix64((h + 0x9E3779B97F4A7C15ULL) ^ mix64(detail::seedSalt(parts) + 0x9E3779B97F4A7C15ULL))), ...);
    return h;
}

// Counter-based splittable generator: a full 2^64 period per stream, cheap to
// seed, passes BigCrush. All randomness in the toolkit flows through this.
class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double nextDouble() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double nextOpenClosed() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    bool nextCoin() { return (next() >> 63) != 0; }

    // Uniform in [0, n), unbiased via rejection.
    std::uint64_t nextBelow(std::uint64_t n) {
        assert(n > 0);
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

private:
    std::uint64_t state_;
};

// Deterministic Fisher-Yates shuffle driven by a SplitMix64 stream.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.nextBelow(i));
        std::swap(items[i - 1], items[j]);
    }
}

// N(0, stddev^2) stream via the basic Box-Muller transform; the pair's second
// deviate is cached so consumption is two uniforms per two deviates.
class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, double stddev) : rng_(seed), stddev_(stddev) {}

    double next() {
        if (hasSpare_) {
            hasSpare_ = false;
            return spare_ * stddev_;
        }
        const double u1 = rng_.nextOpenClosed();
        const double u2 = rng_.nextDouble();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        hasSpare_ = true;
        return radius * std::cos(angle) * stddev_;
    }

private:
    SplitMix64 rng_;
    double stddev_;
    double spare_ = 0.0;
    bool hasSpare_ = false;
};

}  // namespace layergauge
