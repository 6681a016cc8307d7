#include "qbasim/keysim.hpp"

#include <algorithm>
#include <string>

#include "qbasim/errors.hpp"
#include "qbasim/secparams.hpp"

namespace qbasim::keysim {

void LinkParams::validate() const {
    auto in_half_open = [](double v) { return v >= 0.0 && v < 0.5; };
    if (!in_half_open(qber_z)) throw DomainError("link params: qber_z must lie in [0, 0.5)");
    if (!in_half_open(qber_x)) throw DomainError("link params: qber_x must lie in [0, 0.5)");
    if (!(f_ec >= 1.0)) throw DomainError("link params: f_ec must be >= 1");
    if (!(eps_ec > 0.0 && eps_ec < 1.0)) throw DomainError("link params: eps_ec must lie in (0, 1)");
    if (!(pair_rate > 0.0)) throw DomainError("link params: pair_rate must be positive");
    if (!(retain_x > 0.0 && retain_x <= 1.0) || !(retain_z > 0.0 && retain_z <= 1.0)) {
        throw DomainError("link params: retention probabilities must lie in (0, 1]");
    }
}

LinkSimulation simulate_link(const LinkParams& params, std::uint64_t n_events) {
    params.validate();
    if (n_events == 0) throw DomainError("simulate_link: n_events must be >= 1");

    RandomStream rng(params.seed, "link");
    LinkSimulation out;
    auto& keys = out.keys;
    std::uint64_t errors_x = 0;
    std::uint64_t errors_z = 0;

    for (std::uint64_t event = 0; event < n_events; ++event) {
        const std::uint64_t draw = rng.next_u64();
        const bool alice_x = draw & 1U;
        const bool peer_x = (draw >> 1) & 1U;
        const auto bit = static_cast<std::uint8_t>((draw >> 2) & 1U);
        if (alice_x != peer_x) {
            continue;
        }
        const Basis basis = alice_x ? Basis::X : Basis::Z;
        const double retain = basis == Basis::X ? params.retain_x : params.retain_z;
        if (retain < 1.0 && !rng.bernoulli(retain)) continue;

        double qber = basis == Basis::X ? params.qber_x : params.qber_z;
        if (params.qber_schedule) qber = params.qber_schedule(basis, event, qber);
        const bool flip = rng.bernoulli(qber);
        const auto peer_bit = static_cast<std::uint8_t>(bit ^ (flip ? 1U : 0U));

        if (basis == Basis::X) {
            keys.x_alice.push_back(bit);
            keys.x_peer.push_back(peer_bit);
            errors_x += flip;
        } else {
            keys.z_alice.push_back(bit);
            keys.z_peer.push_back(peer_bit);
            errors_z += flip;
        }
    }

    auto& s = out.stats;
    s.n_events = n_events;
    s.n_x = keys.x_alice.size();
    s.n_z = keys.z_alice.size();
    s.e_x_obs = s.n_x == 0 ? 0.0 : static_cast<double>(errors_x) / static_cast<double>(s.n_x);
    s.e_z_obs = s.n_z == 0 ? 0.0 : static_cast<double>(errors_z) / static_cast<double>(s.n_z);
    s.leakage_bits = params.f_ec * static_cast<double>(s.n_x) * secparams::h2(s.e_x_obs);
    return out;
}

Reconciliation reconcile(std::span<const std::uint8_t> alice, std::span<const std::uint8_t> peer,
                         const LinkParams& params, RandomStream& rng) {
    if (alice.size() != peer.size()) throw DomainError("reconcile: key lengths differ");
    Reconciliation out;
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < alice.size(); ++i) disagreements += (alice[i] != peer[i]);
    out.error_fraction =
        alice.empty() ? 0.0 : static_cast<double>(disagreements) / static_cast<double>(alice.size());
    out.leakage_bits = params.f_ec * static_cast<double>(alice.size()) * secparams::h2(out.error_fraction);
    out.success = !rng.bernoulli(params.eps_ec);
    if (out.success) out.key.assign(alice.begin(), alice.end());
    return out;
}

namespace {

std::vector<otuh::KeyBlock>& blocks_of(ThreePartyKeys& keys, PartyId party) {
    switch (party) {
        case PartyId::Alice: return keys.alice;
        case PartyId::Bob: return keys.bob;
        case PartyId::Charlie: return keys.charlie;
        default: break;
    }
    throw ProtocolError("no key blocks for party " + std::string(to_string(party)));
}

}  // namespace

otuh::KeyBlock& ThreePartyKeys::block(PartyId party, otuh::KeyRole role, int round, std::size_t set) {
    auto& blocks = blocks_of(*this, party);
    const std::size_t index =
        set * kBlocksPerSignatureSet + static_cast<std::size_t>(round - 1) * 2 + (role == otuh::KeyRole::Y ? 1 : 0);
    if (round < 1 || round > 2 || index >= blocks.size()) {
        throw ProtocolError("exhausted key material: no " + std::string(otuh::to_string(role)) +
                            std::to_string(round) + " block for " + std::string(to_string(party)));
    }
    return blocks[index];
}

const otuh::KeyBlock& ThreePartyKeys::block(PartyId party, otuh::KeyRole role, int round, std::size_t set) const {
    return const_cast<ThreePartyKeys&>(*this).block(party, role, round, set);
}

ThreePartyKeys build_three_party_keys(std::span<const std::uint8_t> k_b, std::span<const std::uint8_t> k_c,
                                      std::size_t l, std::uint64_t perm_seed, std::size_t blocks_needed) {
    if (l == 0 || l % 8 != 0) throw DomainError("build_three_party_keys: l must be a positive multiple of 8");
    const std::size_t length = std::min(k_b.size(), k_c.size());
    const std::size_t blocks = length / l;
    if (blocks < blocks_needed) {
        throw ProtocolError("insufficient key material: " + std::to_string(length) + " bits yield " +
                            std::to_string(blocks) + " blocks of " + std::to_string(l) + ", need " +
                            std::to_string(blocks_needed));
    }

    // The permutation is public; every party applies the same one.
    std::vector<std::size_t> order(length);
    for (std::size_t i = 0; i < length; ++i) order[i] = i;
    RandomStream perm(perm_seed, "key-permutation");
    for (std::size_t i = length; i > 1; --i) {
        std::swap(order[i - 1], order[perm.uniform_below(i)]);
    }

    ThreePartyKeys out;
    out.block_bits = l;
    std::vector<std::uint8_t> bits_a(l), bits_b(l), bits_c(l);
    for (std::size_t block = 0; block < blocks; ++block) {
        for (std::size_t j = 0; j < l; ++j) {
            const std::size_t src = order[block * l + j];
            bits_b[j] = k_b[src] & 1U;
            bits_c[j] = k_c[src] & 1U;
            bits_a[j] = bits_b[j] ^ bits_c[j];
        }
        const auto role = block % 2 == 0 ? otuh::KeyRole::X : otuh::KeyRole::Y;
        const int round = static_cast<int>((block / 2) % 2) + 1;
        out.alice.emplace_back(pack_bits(bits_a), PartyId::Alice, role, round);
        out.bob.emplace_back(pack_bits(bits_b), PartyId::Bob, role, round);
        out.charlie.emplace_back(pack_bits(bits_c), PartyId::Charlie, role, round);
    }
    return out;
}

}  // namespace qbasim::keysim
