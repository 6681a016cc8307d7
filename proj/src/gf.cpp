#include "qbasim/gf.hpp"

#include <algorithm>
#include <utility>

#include "gf_region.hpp"
#include "qbasim/errors.hpp"

namespace qbasim::gf {

FieldElement gf_add(FieldElement a, FieldElement b) {
    return FieldElement(static_cast<std::uint8_t>(a.value() ^ b.value()));
}

FieldElement gf_mul(FieldElement a, FieldElement b) {
    return FieldElement(detail::mul(a.value(), b.value()));
}

FieldElement gf_inv(FieldElement a) {
    if (a.is_zero()) throw DomainError("gf_inv: zero has no multiplicative inverse");
    return FieldElement(detail::tables().inv[a.value()]);
}

FieldPoly::FieldPoly(std::vector<std::uint8_t> coefficients) : coeffs_(std::move(coefficients)) {
    normalize();
}

void FieldPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FieldPoly FieldPoly::from_low_first(std::vector<std::uint8_t> coefficients) {
    return FieldPoly(std::move(coefficients));
}

FieldPoly FieldPoly::from_high_first(std::span<const std::uint8_t> coefficients) {
    return FieldPoly(std::vector<std::uint8_t>(coefficients.rbegin(), coefficients.rend()));
}

FieldPoly FieldPoly::monomial(FieldElement coefficient, std::size_t degree) {
    std::vector<std::uint8_t> c(degree + 1, 0);
    c[degree] = coefficient.value();
    return FieldPoly(std::move(c));
}

FieldPoly FieldPoly::monic(std::span<const std::uint8_t> low_terms) {
    std::vector<std::uint8_t> c(low_terms.begin(), low_terms.end());
    c.push_back(1);
    return FieldPoly(std::move(c));
}

FieldElement FieldPoly::coefficient(std::size_t power) const {
    return power < coeffs_.size() ? FieldElement(coeffs_[power]) : FieldElement{};
}

FieldElement FieldPoly::leading() const {
    return coeffs_.empty() ? FieldElement{} : FieldElement(coeffs_.back());
}

std::vector<std::uint8_t> FieldPoly::high_first() const {
    return {coeffs_.rbegin(), coeffs_.rend()};
}

FieldElement FieldPoly::evaluate(FieldElement point) const {
    std::uint8_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = static_cast<std::uint8_t>(detail::mul(acc, point.value()) ^ *it);
    }
    return FieldElement(acc);
}

FieldPoly FieldPoly::scaled(FieldElement scalar) const {
    std::vector<std::uint8_t> out(coeffs_.size(), 0);
    detail::mul_add_region(scalar.value(), coeffs_.data(), out.data(), coeffs_.size());
    return FieldPoly(std::move(out));
}

FieldPoly operator+(const FieldPoly& a, const FieldPoly& b) {
    const auto& longer = a.coeffs_.size() >= b.coeffs_.size() ? a.coeffs_ : b.coeffs_;
    const auto& shorter = a.coeffs_.size() >= b.coeffs_.size() ? b.coeffs_ : a.coeffs_;
    std::vector<std::uint8_t> out = longer;
    for (std::size_t i = 0; i < shorter.size(); ++i) out[i] ^= shorter[i];
    return FieldPoly(std::move(out));
}

FieldPoly operator*(const FieldPoly& a, const FieldPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::uint8_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        detail::mul_add_region(a.coeffs_[i], b.coeffs_.data(), out.data() + i, b.coeffs_.size());
    }
    return FieldPoly(std::move(out));
}

namespace {

// In-place remainder of `work` modulo the monic polynomial whose coefficients
// below the leading 1 are `low`. `work` is resized to low.size().
void reduce_monic(std::vector<std::uint8_t>& work, std::span<const std::uint8_t> low) {
    const std::size_t n = low.size();
    for (std::size_t j = work.size(); j-- > n;) {
        const std::uint8_t c = work[j];
        if (c != 0) detail::mul_add_region(c, low.data(), work.data() + (j - n), n);
    }
    work.resize(n);
}

}  // namespace

FieldPoly poly_mod(const FieldPoly& dividend, const FieldPoly& divisor) {
    if (divisor.is_zero()) throw DomainError("poly_mod: zero divisor");
    if (dividend.degree() < divisor.degree()) return dividend;

    // Scale the divisor to monic; the remainder is unchanged up to the unit,
    // and reducing by a monic polynomial gives exactly the same remainder.
    const FieldPoly monic_divisor = divisor.scaled(gf_inv(divisor.leading()));
    const auto low = monic_divisor.low_first().first(static_cast<std::size_t>(monic_divisor.degree()));
    std::vector<std::uint8_t> work(dividend.low_first().begin(), dividend.low_first().end());
    reduce_monic(work, low);
    return FieldPoly::from_low_first(std::move(work));
}

FieldPoly poly_gcd(const FieldPoly& a, const FieldPoly& b) {
    FieldPoly x = a;
    FieldPoly y = b;
    while (!y.is_zero()) {
        FieldPoly r = poly_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    return x.scaled(gf_inv(x.leading()));
}

std::vector<std::uint8_t> serialize_monic(const FieldPoly& p) {
    if (!p.is_monic()) throw DomainError("serialize_monic: polynomial is not monic");
    auto high = p.high_first();
    high.erase(high.begin());
    return high;
}

FieldPoly deserialize_monic(std::span<const std::uint8_t> encoded) {
    std::vector<std::uint8_t> low(encoded.rbegin(), encoded.rend());
    return FieldPoly::monic(low);
}

}  // namespace qbasim::gf
