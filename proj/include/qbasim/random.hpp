#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace qbasim {

/// Counter-based pseudorandom stream.
///
/// Every consumer (a link simulator, the polynomial sampler, an adversary)
/// derives its own stream from the run seed and a stream name, so output
/// value i of a stream depends only on (seed, name, i). Adding a new consumer
/// never perturbs the values seen by existing ones.
///
/// The generator is SplitMix64 over a keyed counter; all derived
/// distributions below are implemented here so results are identical across
/// standard library implementations.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::string_view name = {});

    /// Child stream keyed by this stream's key and `name`; the parent's counter
    /// is not advanced.
    [[nodiscard]] RandomStream derive(std::string_view name) const;

    std::uint64_t next_u64();

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform01();

    bool bernoulli(double p) { return uniform01() < p; }

    void fill(std::span<std::uint8_t> out);

    [[nodiscard]] std::uint64_t counter() const { return counter_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

private:
    RandomStream(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace qbasim
