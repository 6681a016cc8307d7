#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Reference implementations that share no code with the library.
namespace oracle {

// Shift-and-add multiplication modulo x^8 + x^4 + x^3 + x + 1.
inline std::uint8_t peasant_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t p = 0;
    while (b != 0) {
        if (b & 1U) p ^= a;
        const bool carry = (a & 0x80U) != 0;
        a = static_cast<std::uint8_t>(a << 1);
        if (carry) a ^= 0x1BU;
        b >>= 1;
    }
    return p;
}

inline std::uint8_t peasant_inv(std::uint8_t a) {
    // a^254 by repeated multiplication.
    std::uint8_t r = 1;
    for (int i = 0; i < 254; ++i) r = peasant_mul(r, a);
    return r;
}

// Polynomials as low-first coefficient vectors, no normalisation required.
inline std::vector<std::uint8_t> trim(std::vector<std::uint8_t> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

// Schoolbook long division remainder.
inline std::vector<std::uint8_t> long_div_rem(std::vector<std::uint8_t> a, std::vector<std::uint8_t> b) {
    a = trim(a);
    b = trim(b);
    const std::uint8_t lead_inv = peasant_inv(b.back());
    while (a.size() >= b.size()) {
        const std::uint8_t q = peasant_mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] ^= peasant_mul(q, b[i]);
        a = trim(a);
    }
    return a;
}

inline std::uint8_t eval(const std::vector<std::uint8_t>& p, std::uint8_t x) {
    std::uint8_t acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = static_cast<std::uint8_t>(peasant_mul(acc, x) ^ p[i]);
    return acc;
}

// A polynomial of degree 2 or 3 is irreducible iff it has no root.
inline bool has_root(const std::vector<std::uint8_t>& p) {
    for (int x = 0; x < 256; ++x) {
        if (eval(p, static_cast<std::uint8_t>(x)) == 0) return true;
    }
    return false;
}

inline boost::multiprecision::cpp_int factorial(unsigned n) {
    boost::multiprecision::cpp_int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// a! / (a-b)! by full factorials.
inline boost::multiprecision::cpp_int perm_ratio(unsigned a, unsigned b) { return factorial(a) / factorial(a - b); }

}  // namespace oracle
