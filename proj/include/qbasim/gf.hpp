#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qbasim/random.hpp"

namespace qbasim::gf {

/// Field-defining polynomial of GF(2^8): x^8 + x^4 + x^3 + x + 1.
inline constexpr std::uint16_t kFieldPolynomial = 0x11B;

/// An element of GF(2^8): a binary polynomial of degree < 8 packed into a byte.
class FieldElement {
public:
    constexpr FieldElement() = default;
    constexpr explicit FieldElement(std::uint8_t value) : value_(value) {}

    [[nodiscard]] constexpr std::uint8_t value() const { return value_; }
    [[nodiscard]] constexpr bool is_zero() const { return value_ == 0; }

    friend constexpr bool operator==(FieldElement, FieldElement) = default;
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

private:
    std::uint8_t value_ = 0;
};

FieldElement gf_add(FieldElement a, FieldElement b);
FieldElement gf_mul(FieldElement a, FieldElement b);

/// Multiplicative inverse; throws DomainError for zero.
FieldElement gf_inv(FieldElement a);

inline FieldElement operator+(FieldElement a, FieldElement b) { return gf_add(a, b); }
inline FieldElement operator*(FieldElement a, FieldElement b) { return gf_mul(a, b); }

/// Polynomial over GF(2^8).
///
/// Coefficients are stored lowest degree first and normalised after every
/// operation, so a nonzero polynomial always has a nonzero leading
/// coefficient and the zero polynomial has no coefficients at all
/// (degree() == kZeroDegree).
class FieldPoly {
public:
    static constexpr int kZeroDegree = -1;

    FieldPoly() = default;

    /// coefficient i of the input is the coefficient of x^i.
    static FieldPoly from_low_first(std::vector<std::uint8_t> coefficients);
    /// coefficient 0 of the input is the leading coefficient.
    static FieldPoly from_high_first(std::span<const std::uint8_t> coefficients);
    static FieldPoly monomial(FieldElement coefficient, std::size_t degree);
    /// x^degree + (low-order terms given lowest degree first).
    static FieldPoly monic(std::span<const std::uint8_t> low_terms);

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    /// Coefficient of x^power; zero beyond the degree.
    [[nodiscard]] FieldElement coefficient(std::size_t power) const;
    [[nodiscard]] FieldElement leading() const;

    [[nodiscard]] std::span<const std::uint8_t> low_first() const { return coeffs_; }
    [[nodiscard]] std::vector<std::uint8_t> high_first() const;

    /// Value of the polynomial at `point` (Horner).
    [[nodiscard]] FieldElement evaluate(FieldElement point) const;

    /// Multiplies by `scalar`; the result is renormalised.
    [[nodiscard]] FieldPoly scaled(FieldElement scalar) const;

    friend bool operator==(const FieldPoly&, const FieldPoly&) = default;
    friend FieldPoly operator+(const FieldPoly& a, const FieldPoly& b);
    friend FieldPoly operator*(const FieldPoly& a, const FieldPoly& b);

private:
    explicit FieldPoly(std::vector<std::uint8_t> coefficients);
    void normalize();

    std::vector<std::uint8_t> coeffs_;
};

/// Remainder of `dividend` modulo `divisor`; throws DomainError when the
/// divisor is zero.
FieldPoly poly_mod(const FieldPoly& dividend, const FieldPoly& divisor);

/// Monic greatest common divisor (zero only when both inputs are zero).
FieldPoly poly_gcd(const FieldPoly& a, const FieldPoly& b);

/// Deterministic irreducibility test for a monic polynomial of degree >= 1.
///
/// Rabin's criterion with q = 256 and n = deg(p): p is irreducible iff
/// x^(q^n) = x (mod p) and gcd(x^(q^(n/r)) - x, p) = 1 for every prime r | n.
/// Throws DomainError for non-monic or constant input.
bool is_irreducible(const FieldPoly& p);

/// Ben-Or's test: p has no irreducible factor of degree <= n/2. Equivalent to
/// is_irreducible but exits at the first small factor, which makes it the
/// cheaper route for rejecting random candidates. Same preconditions.
bool is_irreducible_ben_or(const FieldPoly& p);

/// A monic polynomial known to be irreducible. Instances are only produced by
/// the sampler or by a checked conversion, so consumers can rely on the
/// invariant without re-testing it.
class IrreduciblePoly {
public:
    /// Throws DomainError unless `p` is monic and irreducible.
    static IrreduciblePoly checked(FieldPoly p);

    [[nodiscard]] const FieldPoly& poly() const { return poly_; }
    [[nodiscard]] int degree() const { return poly_.degree(); }

    friend bool operator==(const IrreduciblePoly&, const IrreduciblePoly&) = default;

private:
    friend IrreduciblePoly sample_irreducible(int degree, RandomStream& rng);
    explicit IrreduciblePoly(FieldPoly p) : poly_(std::move(p)) {}

    FieldPoly poly_;
};

/// Uniformly random monic irreducible polynomial of the given degree, by
/// rejection sampling over uniformly random monic candidates. Throws
/// DomainError when degree < 1.
IrreduciblePoly sample_irreducible(int degree, RandomStream& rng);

/// Number of candidates drawn by the most recent sample_irreducible call on
/// this thread (diagnostics for the acceptance-rate property).
std::size_t last_sample_attempts();

/// A monic polynomial of degree n serialises to its n low-order
/// coefficients, highest degree first; the leading 1 is implicit.
std::vector<std::uint8_t> serialize_monic(const FieldPoly& p);
FieldPoly deserialize_monic(std::span<const std::uint8_t> encoded);

}  // namespace qbasim::gf
