#include "qbasim/random.hpp"

#include <cstring>

namespace qbasim {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::string_view name)
    : key_(mix64(mix64(seed) ^ fnv1a(name))) {}

RandomStream RandomStream::derive(std::string_view name) const {
    return {mix64(key_ ^ fnv1a(name)), 0};
}

std::uint64_t RandomStream::next_u64() {
    return mix64(key_ + kGolden * ++counter_);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
    // Rejection on the top of the range keeps the draw exactly uniform.
    const std::uint64_t limit = max() - max() % bound;
    for (;;) {
        const std::uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void RandomStream::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t v = next_u64();
        for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
            out[i] = static_cast<std::uint8_t>(v);
            v >>= 8;
        }
    }
}

}  // namespace qbasim
