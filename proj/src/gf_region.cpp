#include "gf_region.hpp"

#include "qbasim/gf.hpp"

#if defined(__x86_64__) && defined(__GNUC__)
#include <immintrin.h>
#define QBASIM_HAVE_GFNI_KERNEL 1
#endif

namespace qbasim::gf::detail {
namespace {

constexpr std::uint8_t kGenerator = 0x03;

std::uint8_t slow_mul(std::uint8_t a, std::uint8_t b) {
    unsigned product = 0;
    unsigned x = a;
    for (unsigned y = b; y != 0; y >>= 1) {
        if (y & 1U) product ^= x;
        x <<= 1;
        if (x & 0x100U) x ^= kFieldPolynomial;
    }
    return static_cast<std::uint8_t>(product);
}

Tables build_tables() {
    Tables t;
    std::uint8_t value = 1;
    for (unsigned i = 0; i < 255; ++i) {
        t.exp[i] = value;
        t.exp[i + 255] = value;
        t.log[value] = static_cast<std::uint8_t>(i);
        value = slow_mul(value, kGenerator);
    }
    for (unsigned a = 1; a < 256; ++a) {
        t.inv[a] = t.exp[255 - t.log[a]];
        for (unsigned b = 1; b < 256; ++b) {
            t.mul[a][b] = t.exp[t.log[a] + t.log[b]];
        }
        t.square[a] = t.mul[a][a];
    }
    return t;
}

#ifdef QBASIM_HAVE_GFNI_KERNEL
// gf2p8mulb reduces modulo x^8 + x^4 + x^3 + x + 1, the same field polynomial.
__attribute__((target("avx2,gfni"))) void mul_add_region_gfni(std::uint8_t c, const std::uint8_t* src,
                                                               std::uint8_t* dst, std::size_t n) {
    const __m256i factor = _mm256_set1_epi8(static_cast<char>(c));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_xor_si256(d, _mm256_gf2p8mul_epi8(s, factor)));
    }
    if (i < n) mul_add_region_scalar(c, src + i, dst + i, n - i);
}

bool detect_gfni() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("gfni");
}
#endif

}  // namespace

const Tables& tables() {
    static const Tables instance = build_tables();
    return instance;
}

void mul_add_region_scalar(std::uint8_t c, const std::uint8_t* src, std::uint8_t* dst, std::size_t n) {
    if (c == 0) return;
    const auto& row = tables().mul[c];
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= row[src[i]];
}

bool simd_region_available() {
#ifdef QBASIM_HAVE_GFNI_KERNEL
    static const bool available = detect_gfni();
    return available;
#else
    return false;
#endif
}

void mul_add_region(std::uint8_t c, const std::uint8_t* src, std::uint8_t* dst, std::size_t n) {
    if (c == 0) return;
#ifdef QBASIM_HAVE_GFNI_KERNEL
    if (n >= 32 && simd_region_available()) {
        mul_add_region_gfni(c, src, dst, n);
        return;
    }
#endif
    mul_add_region_scalar(c, src, dst, n);
}

}  // namespace qbasim::gf::detail
