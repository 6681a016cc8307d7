#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "qbasim/bytes.hpp"
#include "qbasim/gf.hpp"
#include "qbasim/party.hpp"
#include "qbasim/random.hpp"

// One-time universal hashing signatures over GF(2^8).
//
// The signer hashes the message polynomial with a freshly sampled monic
// irreducible p(x) of degree n = l/8:
//
//     Dig = M(x) * x^n mod p(x)
//
// and one-time-pad encrypts the digest and the description of p:
//
//     Sig = Dig xor X_A,   p = serialize(p_a) xor Y_A.
//
// A verifier who recovers X_A and Y_A recomputes the digest and accepts only
// on an exact match.
namespace qbasim::otuh {

inline constexpr std::size_t kDefaultKeyBits = 512;

enum class KeyRole { X, Y };

std::string_view to_string(KeyRole role);

/// An l-bit one-time key. Signing consumes the block; a second consumption is
/// a ProtocolError.
class KeyBlock {
public:
    KeyBlock(Bytes bits, PartyId owner, KeyRole role, int round);

    [[nodiscard]] std::span<const std::uint8_t> bits() const { return bits_; }
    [[nodiscard]] std::size_t bit_length() const { return bits_.size() * 8; }
    [[nodiscard]] PartyId owner() const { return owner_; }
    [[nodiscard]] KeyRole role() const { return role_; }
    [[nodiscard]] int round() const { return round_; }
    [[nodiscard]] bool consumed() const { return consumed_; }

    void consume();

private:
    Bytes bits_;
    PartyId owner_;
    KeyRole role_;
    int round_;
    bool consumed_ = false;
};

/// The transmitted triple {M, Sig, p} and the round it belongs to.
struct SignaturePackage {
    Bytes message;
    Bytes sig;
    Bytes p;
    std::uint8_t round = 1;

    /// |M| in bits, the unit used by the forgery bound.
    [[nodiscard]] std::size_t message_bits() const { return message.size() * 8; }

    /// [4-byte big-endian message length | message | Sig | p | 1-byte round].
    [[nodiscard]] Bytes to_bytes() const;
    /// Inverse of to_bytes for a given signature length in bytes. Throws
    /// DomainError on a malformed buffer.
    static SignaturePackage from_bytes(std::span<const std::uint8_t> buffer, std::size_t sig_bytes);

    friend bool operator==(const SignaturePackage&, const SignaturePackage&) = default;
};

/// Byte i of an L-byte message becomes the coefficient of x^(L-1-i). The
/// empty message maps to the zero polynomial.
gf::FieldPoly encode_message(std::span<const std::uint8_t> message);

/// M(x) * x^n mod p(x) as n bytes, highest degree first, zero-padded.
Bytes hash_digest(const gf::FieldPoly& message, const gf::IrreduciblePoly& p);

/// Same, for an unvetted modulus: throws DomainError unless p is monic and
/// irreducible.
Bytes hash_digest(const gf::FieldPoly& message, const gf::FieldPoly& p);

/// Signs `message` with the signer's X and Y blocks, consuming both. Throws
/// ProtocolError on consumed keys, wrong roles, or mismatched lengths.
SignaturePackage sign(std::span<const std::uint8_t> message, KeyBlock& x_key, KeyBlock& y_key,
                      RandomStream& rng);

/// XOR of a verifier's own block and the block disclosed by the other
/// verifier. Throws ProtocolError unless lengths, roles and rounds agree.
Bytes recover_signer_key(const KeyBlock& own, const KeyBlock& received);

enum class Verification { Accept, Reject };

/// Total: malformed input yields Reject, never an exception. Accepts iff the
/// digest recomputed under the decrypted polynomial equals Sig xor x_rec and
/// the decrypted polynomial is irreducible.
Verification verify(const SignaturePackage& package, std::span<const std::uint8_t> x_rec,
                    std::span<const std::uint8_t> y_rec);

}  // namespace qbasim::otuh
