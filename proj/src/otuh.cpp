#include "qbasim/otuh.hpp"

#include <algorithm>
#include <string>

#include "gf_region.hpp"
#include "qbasim/errors.hpp"

namespace qbasim::otuh {

std::string_view to_string(KeyRole role) { return role == KeyRole::X ? "X" : "Y"; }

KeyBlock::KeyBlock(Bytes bits, PartyId owner, KeyRole role, int round)
    : bits_(std::move(bits)), owner_(owner), role_(role), round_(round) {}

void KeyBlock::consume() {
    if (consumed_) {
        throw ProtocolError("key block " + std::string(to_string(owner_)) + "/" +
                            std::string(to_string(role_)) + std::to_string(round_) + " already consumed");
    }
    consumed_ = true;
}

Bytes SignaturePackage::to_bytes() const {
    Bytes out;
    out.reserve(4 + message.size() + sig.size() + p.size() + 1);
    const auto len = static_cast<std::uint32_t>(message.size());
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(len >> shift));
    out.insert(out.end(), message.begin(), message.end());
    out.insert(out.end(), sig.begin(), sig.end());
    out.insert(out.end(), p.begin(), p.end());
    out.push_back(round);
    return out;
}

SignaturePackage SignaturePackage::from_bytes(std::span<const std::uint8_t> buffer, std::size_t sig_bytes) {
    if (buffer.size() < 4) throw DomainError("signature package: truncated length prefix");
    std::size_t len = 0;
    for (int i = 0; i < 4; ++i) len = (len << 8) | buffer[static_cast<std::size_t>(i)];
    if (buffer.size() != 4 + len + 2 * sig_bytes + 1) {
        throw DomainError("signature package: buffer size does not match its length prefix");
    }
    SignaturePackage pkg;
    auto it = buffer.begin() + 4;
    pkg.message.assign(it, it + static_cast<std::ptrdiff_t>(len));
    it += static_cast<std::ptrdiff_t>(len);
    pkg.sig.assign(it, it + static_cast<std::ptrdiff_t>(sig_bytes));
    it += static_cast<std::ptrdiff_t>(sig_bytes);
    pkg.p.assign(it, it + static_cast<std::ptrdiff_t>(sig_bytes));
    pkg.round = buffer.back();
    return pkg;
}

gf::FieldPoly encode_message(std::span<const std::uint8_t> message) {
    return gf::FieldPoly::from_high_first(message);
}

namespace {

// M(x) * x^n mod p for monic p of degree n, where `low` holds the n
// coefficients of p below the leading 1. Horner over the message bytes, then
// n further multiplications by x.
Bytes division_hash(const gf::FieldPoly& message, std::span<const std::uint8_t> low) {
    const std::size_t n = low.size();
    std::vector<std::uint8_t> r(n + 1, 0);  // r[n] is the overflow slot
    auto step = [&](std::uint8_t incoming) {
        // r <- r * x + incoming, then cancel the x^n term against p.
        std::copy_backward(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n), r.end());
        r[0] = incoming;
        const std::uint8_t top = r[n];
        r[n] = 0;
        if (top != 0) gf::detail::mul_add_region(top, low.data(), r.data(), n);
    };
    const auto coeffs = message.low_first();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) step(*it);
    for (std::size_t i = 0; i < n; ++i) step(0);

    Bytes digest(n);
    for (std::size_t i = 0; i < n; ++i) digest[i] = r[n - 1 - i];
    return digest;
}

std::span<const std::uint8_t> low_terms(const gf::FieldPoly& monic) {
    return monic.low_first().first(static_cast<std::size_t>(monic.degree()));
}

}  // namespace

Bytes hash_digest(const gf::FieldPoly& message, const gf::IrreduciblePoly& p) {
    return division_hash(message, low_terms(p.poly()));
}

Bytes hash_digest(const gf::FieldPoly& message, const gf::FieldPoly& p) {
    if (!p.is_monic() || p.degree() < 1) throw DomainError("hash_digest: modulus must be monic of degree >= 1");
    return hash_digest(message, gf::IrreduciblePoly::checked(p));
}

SignaturePackage sign(std::span<const std::uint8_t> message, KeyBlock& x_key, KeyBlock& y_key,
                      RandomStream& rng) {
    if (x_key.role() != KeyRole::X || y_key.role() != KeyRole::Y) {
        throw ProtocolError("sign: expected one X-role and one Y-role key block");
    }
    if (x_key.consumed() || y_key.consumed()) throw ProtocolError("sign: key block already consumed");
    if (x_key.bit_length() != y_key.bit_length() || x_key.bits().empty()) {
        throw ProtocolError("sign: X and Y key blocks must have the same nonzero length");
    }
    if (x_key.round() != y_key.round()) throw ProtocolError("sign: X and Y key blocks belong to different rounds");

    const auto n = static_cast<int>(x_key.bits().size());
    const gf::IrreduciblePoly p_a = gf::sample_irreducible(n, rng);
    const Bytes digest = hash_digest(encode_message(message), p_a);

    x_key.consume();
    y_key.consume();

    SignaturePackage pkg;
    pkg.message.assign(message.begin(), message.end());
    pkg.sig = xor_bytes(digest, x_key.bits());
    pkg.p = xor_bytes(gf::serialize_monic(p_a.poly()), y_key.bits());
    pkg.round = static_cast<std::uint8_t>(x_key.round());
    return pkg;
}

Bytes recover_signer_key(const KeyBlock& own, const KeyBlock& received) {
    if (own.bit_length() != received.bit_length()) throw ProtocolError("recover_signer_key: length mismatch");
    if (own.role() != received.role()) throw ProtocolError("recover_signer_key: role mismatch");
    if (own.round() != received.round()) throw ProtocolError("recover_signer_key: round mismatch");
    return xor_bytes(own.bits(), received.bits());
}

Verification verify(const SignaturePackage& package, std::span<const std::uint8_t> x_rec,
                    std::span<const std::uint8_t> y_rec) {
    const std::size_t n = package.sig.size();
    if (n == 0 || package.p.size() != n || x_rec.size() != n || y_rec.size() != n) {
        return Verification::Reject;
    }
    const Bytes decrypted = xor_bytes(package.p, y_rec);
    const gf::FieldPoly p = gf::deserialize_monic(decrypted);
    const Bytes expected = xor_bytes(package.sig, x_rec);
    const Bytes actual = division_hash(encode_message(package.message), low_terms(p));
    if (actual != expected) return Verification::Reject;
    return gf::is_irreducible(p) ? Verification::Accept : Verification::Reject;
}

}  // namespace qbasim::otuh
