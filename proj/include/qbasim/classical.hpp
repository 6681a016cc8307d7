#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbasim/party.hpp"
#include "qbasim/qba.hpp"
#include "qbasim/transcript.hpp"

// Classical Byzantine agreement baselines used as reference points for the
// quantum protocol: the oral-message protocol with three or four parties and
// the signed-message protocol that relies on a certificate authority.
namespace qbasim::classical {

struct ClassicalScenario {
    bool commander_loyal = true;
    /// Faulty lieutenant when the commander is loyal. Empty picks the default:
    /// Emery for four parties, Charlie otherwise.
    std::optional<PartyId> faulty_lieutenant;
    std::string m1 = "attack";
    std::string m2 = "retreat";
    /// Tie-break value. Empty means the message Bob relays in step 2.
    std::string delta;
    std::uint64_t seed = 1;
};

/// What one lieutenant received, in arrival order.
struct View {
    std::vector<std::pair<PartyId, std::string>> received;

    /// Compact JSON; equal views serialize to equal bytes.
    [[nodiscard]] std::string serialize() const;
};

struct ClassicalResult {
    qba::Transcript transcript;
    qba::Verdict verdict;
    std::map<PartyId, View> views;
    std::optional<PartyId> faulty;
    int effective_party_count = 0;
    int faulty_count = 0;
    /// effective_party_count >= 3 * faulty_count + 1.
    bool satisfies_one_third_bound = false;
};

/// Oral-message agreement: the commander sends its order, the lieutenants
/// relay what they received to each other, and each decides by majority.
/// With three parties a lieutenant holding two different orders cannot tell
/// who lied and reports Undecidable. Throws DomainError unless n_parties is
/// 3 or 4, or if the faulty lieutenant is not one of the lieutenants.
ClassicalResult run_classical_oral(int n_parties, const ClassicalScenario& scenario);

/// Signed-message agreement among Alice, Bob and Charlie. The authority
/// issues signing keys and answers every verification query, and is counted
/// as a fourth participant. A faulty lieutenant relays m2 under Alice's
/// signature; the authority rejects it and the relay is discarded.
ClassicalResult run_classical_signature(const ClassicalScenario& scenario);

nlohmann::ordered_json to_json(const ClassicalResult& result);

}  // namespace qbasim::classical
