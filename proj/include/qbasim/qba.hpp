#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbasim/keysim.hpp"
#include "qbasim/party.hpp"
#include "qbasim/transcript.hpp"

// Three-party Byzantine agreement over one-time universal hashing signatures.
//
// Alice commands, Bob and Charlie are lieutenants. Step 1: Alice signs to
// Bob, Bob forwards the package and his keys to Charlie, Charlie returns his
// keys, and both verify. Step 2 repeats with Bob and Charlie swapped. A
// round contributes its message to the lieutenants' lists only if both
// verifiers accept. Step 3: each lieutenant outputs the biased majority of
// its list.
namespace qbasim::qba {

/// A lieutenant's final output.
struct Decision {
    enum class Kind {
        Message,      ///< obeys `message`
        NoDecision,   ///< nothing valid was received
        Undecidable,  ///< conflicting information with no way to resolve it
    };

    Kind kind = Kind::NoDecision;
    std::string message;

    static Decision of(std::string m) { return {Kind::Message, std::move(m)}; }
    static Decision none() { return {Kind::NoDecision, {}}; }
    static Decision undecidable() { return {Kind::Undecidable, {}}; }

    friend bool operator==(const Decision&, const Decision&) = default;
};

std::string describe(const Decision& decision);

enum class AdversaryStrategy { Honest, EquivocatingCommander, ForgingBob, ForgingCharlie };

/// How a forging lieutenant alters the package it forwards.
enum class ForgeryTactic {
    SubstituteMessage,  ///< swap in m2 (or a variant of m1), keep Sig and p
    TamperBytes,        ///< flip one random bit of the message, Sig or p
    ReplayPackage,      ///< forward the package seen in the other round
    WithholdKeys,       ///< forward honestly but never disclose own keys
    Mixed,              ///< one of the first three, drawn per run
};

enum class DeltaRule {
    ForwardedByBob,  ///< the message Bob forwarded in step 1
    Fixed,           ///< ScenarioConfig::delta_message
};

std::string_view to_string(AdversaryStrategy strategy);
std::string_view to_string(ForgeryTactic tactic);
std::optional<AdversaryStrategy> strategy_from_string(std::string_view name);
std::optional<ForgeryTactic> tactic_from_string(std::string_view name);

inline constexpr int kScenarioSchemaVersion = 1;

struct ScenarioConfig {
    int schema_version = kScenarioSchemaVersion;
    std::uint64_t seed = 1;
    AdversaryStrategy strategy = AdversaryStrategy::Honest;
    ForgeryTactic tactic = ForgeryTactic::SubstituteMessage;
    /// Whether the commander is loyal and which party (if any) is faulty.
    /// Both follow from `strategy`; see normalize().
    bool commander_loyal = true;
    std::optional<PartyId> faulty_party;
    std::string m1 = "attack";
    std::string m2 = "retreat";
    DeltaRule delta_rule = DeltaRule::ForwardedByBob;
    std::string delta_message;
    std::size_t l = otuh::kDefaultKeyBits;
    std::uint64_t n_events = 200000;
    keysim::LinkParams link_ab;
    keysim::LinkParams link_ac;

    /// Fills commander_loyal and faulty_party from the strategy. Throws
    /// DomainError if explicitly given values contradict it, or if the
    /// configuration is otherwise invalid.
    void normalize(bool faulty_given, bool loyalty_given);
};

/// Faulty party implied by a strategy.
std::optional<PartyId> faulty_party_for(AdversaryStrategy strategy);

struct Verdict {
    enum class Status { Completed, Aborted };

    Status status = Status::Completed;
    std::string abort_reason;
    std::map<PartyId, Decision> outputs;
    std::map<PartyId, std::vector<std::string>> lists;
    std::map<PartyId, bool> loyal;
    bool ic1 = false;
    std::optional<bool> ic2;  ///< empty when the commander is disloyal
};

/// Most frequent message; `delta` when the top count is shared. Throws
/// DomainError for an empty list.
std::string majority(const std::vector<std::string>& messages, const std::string& delta);

struct LoyaltyModel {
    PartyId commander = PartyId::Alice;
    bool commander_loyal = true;
    std::string commander_message;
    std::vector<PartyId> lieutenants;
    std::optional<PartyId> faulty;
};

/// IC1: all loyal lieutenants output the same order (an Undecidable output
/// obeys no order). IC2, only for a loyal commander: every loyal lieutenant
/// outputs the commander's message.
std::pair<bool, std::optional<bool>> check_ic(const Verdict& verdict, const LoyaltyModel& model);
std::pair<bool, std::optional<bool>> check_ic(const Verdict& verdict, const ScenarioConfig& scenario);

struct RunResult {
    Transcript transcript;
    Verdict verdict;
};

/// Executes the three steps with the scenario's adversary applied, consuming
/// Alice's blocks of signature set `set`. Randomness comes from streams
/// derived from scenario.seed. Throws ProtocolError if key material is
/// missing or already consumed.
RunResult run_three_party(const ScenarioConfig& scenario, keysim::ThreePartyKeys& keys, std::size_t set = 0);

nlohmann::ordered_json to_json(const Verdict& verdict);

}  // namespace qbasim::qba
