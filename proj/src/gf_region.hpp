#pragma once

// Byte-region kernels shared by the polynomial code. Not part of the public
// interface.

#include <array>
#include <cstddef>
#include <cstdint>

namespace qbasim::gf::detail {

struct Tables {
    std::array<std::uint8_t, 256> log{};
    std::array<std::uint8_t, 512> exp{};
    std::array<std::uint8_t, 256> inv{};
    std::array<std::uint8_t, 256> square{};
    std::array<std::array<std::uint8_t, 256>, 256> mul{};
};

const Tables& tables();

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) { return tables().mul[a][b]; }

/// dst[i] ^= c * src[i] for i < n.
void mul_add_region(std::uint8_t c, const std::uint8_t* src, std::uint8_t* dst, std::size_t n);
void mul_add_region_scalar(std::uint8_t c, const std::uint8_t* src, std::uint8_t* dst, std::size_t n);

/// True when the GFNI kernel is in use.
bool simd_region_available();

}  // namespace qbasim::gf::detail
