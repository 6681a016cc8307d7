#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbasim {

using Bytes = std::vector<std::uint8_t>;

/// Bitwise XOR of two equal-length byte strings. Throws DomainError on a
/// length mismatch.
Bytes xor_bytes(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

std::string to_hex(std::span<const std::uint8_t> data);

/// Parses lowercase or uppercase hex; throws DomainError on odd length or a
/// non-hex character.
Bytes from_hex(std::string_view hex);

Bytes to_bytes(std::string_view text);

/// Packs a 0/1-per-byte bit vector MSB-first. The bit count must be a
/// multiple of 8.
Bytes pack_bits(std::span<const std::uint8_t> bits);

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes);

}  // namespace qbasim
