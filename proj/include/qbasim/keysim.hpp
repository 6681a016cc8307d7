#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qbasim/otuh.hpp"
#include "qbasim/random.hpp"

// Simulated entanglement-based key distribution between Alice and each
// lieutenant, and the three-party key correlation built on top of it.
namespace qbasim::keysim {

enum class Basis { Z, X };

/// Optional time-varying error model: returns the error probability for the
/// given basis at the given event index. `configured` is the link's constant
/// rate for that basis.
using QberSchedule = std::function<double(Basis basis, std::uint64_t event, double configured)>;

struct LinkParams {
    double qber_z = 0.0342;
    double qber_x = 0.0476;
    double pair_rate = 1.0;  ///< entangled pairs per second, used only to report durations
    double f_ec = 1.1648;
    double eps_ec = 1e-10;
    std::uint64_t seed = 0;
    /// Post-sifting retention per basis. 1.0 keeps every matched event.
    double retain_x = 1.0;
    double retain_z = 1.0;
    QberSchedule qber_schedule;  ///< empty: constant rates

    /// Throws DomainError when an invariant is violated.
    void validate() const;
};

/// Measured link statistics.
struct LinkStats {
    std::uint64_t n_events = 0;
    std::uint64_t n_x = 0;
    std::uint64_t n_z = 0;
    double e_x_obs = 0.0;
    double e_z_obs = 0.0;
    double leakage_bits = 0.0;  ///< f_ec * n_x * h2(e_x_obs)

    [[nodiscard]] double sifting_ratio() const {
        return n_events == 0 ? 0.0 : static_cast<double>(n_x + n_z) / static_cast<double>(n_events);
    }
};

/// Sifted bits at both ends of a link, one bit per byte (0 or 1). X-basis bits
/// are key material; Z-basis bits are test data for phase-error estimation.
struct SiftedKeys {
    std::vector<std::uint8_t> x_alice, x_peer;
    std::vector<std::uint8_t> z_alice, z_peer;
};

struct LinkSimulation {
    SiftedKeys keys;
    LinkStats stats;
};

/// Runs n_events entangled-pair measurements. Both ends choose Z or X
/// uniformly and independently; matched-basis events survive sifting, and
/// each surviving bit is flipped at the peer with the basis error rate.
/// Deterministic given params.seed. Throws DomainError on invalid params or
/// n_events == 0.
LinkSimulation simulate_link(const LinkParams& params, std::uint64_t n_events);

struct Reconciliation {
    std::vector<std::uint8_t> key;  ///< agreed bits; empty when the block was discarded
    double error_fraction = 0.0;
    double leakage_bits = 0.0;
    bool success = true;
};

/// Error-correction model: both ends adopt `alice`'s string, leaking
/// f_ec * n * h2(e) bits where e is the actual disagreement fraction. With
/// probability eps_ec the correction silently fails; then success is false
/// and the key is discarded by both ends. Throws DomainError on a length
/// mismatch.
Reconciliation reconcile(std::span<const std::uint8_t> alice, std::span<const std::uint8_t> peer,
                         const LinkParams& params, RandomStream& rng);

/// Key blocks per party, in emission order X1, Y1, X2, Y2, X1, ...
struct ThreePartyKeys {
    std::size_t block_bits = 0;
    std::vector<otuh::KeyBlock> alice;
    std::vector<otuh::KeyBlock> bob;
    std::vector<otuh::KeyBlock> charlie;

    [[nodiscard]] std::size_t signature_sets() const { return alice.size() / 4; }

    /// Block of `party` with the given role and round from signature set
    /// `set`. Throws ProtocolError if there is no such block.
    otuh::KeyBlock& block(PartyId party, otuh::KeyRole role, int round, std::size_t set = 0);
    [[nodiscard]] const otuh::KeyBlock& block(PartyId party, otuh::KeyRole role, int round,
                                              std::size_t set = 0) const;
};

inline constexpr std::size_t kBlocksPerSignatureSet = 4;

/// Builds the correlated blocks: K_A = K_B xor K_C over the common length,
/// one public permutation derived from perm_seed applied to all three
/// strings, then l-bit blocks. Bits are one per byte. Throws ProtocolError
/// if fewer than `blocks_needed` blocks fit, DomainError if l is not a
/// positive multiple of 8.
ThreePartyKeys build_three_party_keys(std::span<const std::uint8_t> k_b, std::span<const std::uint8_t> k_c,
                                      std::size_t l, std::uint64_t perm_seed,
                                      std::size_t blocks_needed = kBlocksPerSignatureSet);

}  // namespace qbasim::keysim
