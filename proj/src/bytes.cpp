#include "qbasim/bytes.hpp"

#include "qbasim/errors.hpp"

namespace qbasim {

Bytes xor_bytes(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw DomainError("xor_bytes: length mismatch");
    Bytes out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

std::string to_hex(std::span<const std::uint8_t> data) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t byte : data) {
        out.push_back(kDigits[byte >> 4]);
        out.push_back(kDigits[byte & 0x0F]);
    }
    return out;
}

namespace {
int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw DomainError("from_hex: odd number of digits");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw DomainError("from_hex: invalid digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

Bytes to_bytes(std::string_view text) { return {text.begin(), text.end()}; }

Bytes pack_bits(std::span<const std::uint8_t> bits) {
    if (bits.size() % 8 != 0) throw DomainError("pack_bits: bit count is not a multiple of 8");
    Bytes out(bits.size() / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] & 1U) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
    }
    return out;
}

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> out(bytes.size() * 8);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1U;
    return out;
}

}  // namespace qbasim
