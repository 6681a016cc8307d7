#include "qbasim/qba.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "qbasim/errors.hpp"

namespace qbasim::qba {

namespace {

constexpr std::array<std::pair<AdversaryStrategy, std::string_view>, 4> kStrategyNames{{
    {AdversaryStrategy::Honest, "honest"},
    {AdversaryStrategy::EquivocatingCommander, "equivocating_commander"},
    {AdversaryStrategy::ForgingBob, "forging_bob"},
    {AdversaryStrategy::ForgingCharlie, "forging_charlie"},
}};

constexpr std::array<std::pair<ForgeryTactic, std::string_view>, 5> kTacticNames{{
    {ForgeryTactic::SubstituteMessage, "substitute_message"},
    {ForgeryTactic::TamperBytes, "tamper_bytes"},
    {ForgeryTactic::ReplayPackage, "replay_package"},
    {ForgeryTactic::WithholdKeys, "withhold_keys"},
    {ForgeryTactic::Mixed, "mixed"},
}};

template <typename Table, typename Enum>
std::string_view name_of(const Table& table, Enum value) {
    for (const auto& [v, name] : table) {
        if (v == value) return name;
    }
    return "?";
}

template <typename Enum, typename Table>
std::optional<Enum> value_of(const Table& table, std::string_view name) {
    for (const auto& [v, n] : table) {
        if (n == name) return v;
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(AdversaryStrategy strategy) { return name_of(kStrategyNames, strategy); }
std::string_view to_string(ForgeryTactic tactic) { return name_of(kTacticNames, tactic); }
std::optional<AdversaryStrategy> strategy_from_string(std::string_view name) {
    return value_of<AdversaryStrategy>(kStrategyNames, name);
}
std::optional<ForgeryTactic> tactic_from_string(std::string_view name) {
    return value_of<ForgeryTactic>(kTacticNames, name);
}

std::string describe(const Decision& decision) {
    switch (decision.kind) {
        case Decision::Kind::Message: return decision.message;
        case Decision::Kind::NoDecision: return "<no-decision>";
        case Decision::Kind::Undecidable: return "<undecidable>";
    }
    return "?";
}

std::optional<PartyId> faulty_party_for(AdversaryStrategy strategy) {
    switch (strategy) {
        case AdversaryStrategy::Honest: return std::nullopt;
        case AdversaryStrategy::EquivocatingCommander: return PartyId::Alice;
        case AdversaryStrategy::ForgingBob: return PartyId::Bob;
        case AdversaryStrategy::ForgingCharlie: return PartyId::Charlie;
    }
    return std::nullopt;
}

void ScenarioConfig::normalize(bool faulty_given, bool loyalty_given) {
    const auto implied = faulty_party_for(strategy);
    if (faulty_given && faulty_party != implied) {
        throw DomainError("scenario: faulty_party contradicts adversary_strategy '" +
                          std::string(to_string(strategy)) + "'");
    }
    const bool implied_loyal = implied != PartyId::Alice;
    if (loyalty_given && commander_loyal != implied_loyal) {
        throw DomainError("scenario: commander_loyal contradicts adversary_strategy '" +
                          std::string(to_string(strategy)) + "'");
    }
    faulty_party = implied;
    commander_loyal = implied_loyal;
    if (schema_version != kScenarioSchemaVersion) {
        throw DomainError("scenario: unsupported schema_version " + std::to_string(schema_version));
    }
    if (l == 0 || l % 8 != 0) throw DomainError("scenario: l must be a positive multiple of 8");
    if (strategy == AdversaryStrategy::EquivocatingCommander && m1 == m2) {
        throw DomainError("scenario: an equivocating commander needs two different messages");
    }
    if (delta_rule == DeltaRule::Fixed && delta_message.empty()) {
        throw DomainError("scenario: fixed delta rule needs delta_message");
    }
    link_ab.validate();
    link_ac.validate();
}

std::string majority(const std::vector<std::string>& messages, const std::string& delta) {
    if (messages.empty()) throw DomainError("majority: empty message list");
    std::map<std::string, std::size_t> counts;
    for (const auto& m : messages) ++counts[m];
    std::size_t best = 0;
    std::size_t holders = 0;
    const std::string* winner = nullptr;
    for (const auto& [m, c] : counts) {
        if (c > best) {
            best = c;
            holders = 1;
            winner = &m;
        } else if (c == best) {
            ++holders;
        }
    }
    return holders == 1 ? *winner : delta;
}

std::pair<bool, std::optional<bool>> check_ic(const Verdict& verdict, const LoyaltyModel& model) {
    std::vector<const Decision*> loyal_outputs;
    for (PartyId lt : model.lieutenants) {
        if (model.faulty == lt) continue;
        const auto it = verdict.outputs.find(lt);
        if (it != verdict.outputs.end()) loyal_outputs.push_back(&it->second);
    }
    bool ic1 = true;
    for (const Decision* d : loyal_outputs) {
        if (d->kind == Decision::Kind::Undecidable || !(*d == *loyal_outputs.front())) ic1 = false;
    }
    std::optional<bool> ic2;
    if (model.commander_loyal) {
        ic2 = std::all_of(loyal_outputs.begin(), loyal_outputs.end(),
                          [&](const Decision* d) { return *d == Decision::of(model.commander_message); });
    }
    return {ic1, ic2};
}

std::pair<bool, std::optional<bool>> check_ic(const Verdict& verdict, const ScenarioConfig& scenario) {
    LoyaltyModel model;
    model.commander_loyal = scenario.commander_loyal;
    model.commander_message = scenario.m1;
    model.lieutenants = {PartyId::Bob, PartyId::Charlie};
    model.faulty = scenario.faulty_party;
    return check_ic(verdict, model);
}

namespace {

std::string as_string(const Bytes& bytes) { return {bytes.begin(), bytes.end()}; }

// One signing round as seen on the wire, kept for later rounds (replay).
struct RoundRecord {
    otuh::SignaturePackage original;
    otuh::SignaturePackage forwarded;
};

class ThreePartyRun {
public:
    ThreePartyRun(const ScenarioConfig& scenario, keysim::ThreePartyKeys& keys, std::size_t set)
        : scenario_(scenario),
          keys_(keys),
          set_(set),
          sampler_(scenario.seed, "polynomial-sampler"),
          adversary_(scenario.seed, "adversary") {
        tactic_ = scenario.tactic;
        if (tactic_ == ForgeryTactic::Mixed) {
            constexpr std::array<ForgeryTactic, 3> kChoices{ForgeryTactic::SubstituteMessage,
                                                            ForgeryTactic::TamperBytes,
                                                            ForgeryTactic::ReplayPackage};
            tactic_ = kChoices[adversary_.uniform_below(kChoices.size())];
        }
    }

    RunResult run() {
        // Touch every block up front so exhausted material fails before any
        // message is sent.
        for (PartyId party : {PartyId::Alice, PartyId::Bob, PartyId::Charlie}) {
            for (int round : {1, 2}) {
                for (auto role : {otuh::KeyRole::X, otuh::KeyRole::Y}) {
                    if (keys_.block(party, role, round, set_).consumed()) {
                        throw ProtocolError("exhausted key material: block already consumed");
                    }
                }
            }
        }

        play_round(1, PartyId::Bob, PartyId::Charlie);
        play_round(2, PartyId::Charlie, PartyId::Bob);
        decide();
        return {std::move(transcript_), std::move(verdict_)};
    }

private:
    [[nodiscard]] bool is_faulty(PartyId party) const { return scenario_.faulty_party == party; }

    [[nodiscard]] std::string commander_message(int round) const {
        if (scenario_.strategy == AdversaryStrategy::EquivocatingCommander && round == 2) return scenario_.m2;
        return scenario_.m1;
    }

    otuh::SignaturePackage forge(const otuh::SignaturePackage& genuine, int round) {
        otuh::SignaturePackage forged = genuine;
        ForgeryTactic tactic = tactic_;
        if (tactic == ForgeryTactic::ReplayPackage && round == 1) tactic = ForgeryTactic::SubstituteMessage;
        switch (tactic) {
            case ForgeryTactic::SubstituteMessage: {
                std::string replacement = scenario_.m2;
                if (Bytes(replacement.begin(), replacement.end()) == genuine.message) replacement.push_back('!');
                forged.message = to_bytes(replacement);
                break;
            }
            case ForgeryTactic::TamperBytes: {
                const std::size_t total_bits = 8 * (forged.message.size() + forged.sig.size() + forged.p.size());
                std::size_t bit = adversary_.uniform_below(total_bits);
                for (Bytes* field : {&forged.message, &forged.sig, &forged.p}) {
                    if (bit < 8 * field->size()) {
                        (*field)[bit / 8] ^= static_cast<std::uint8_t>(0x80U >> (bit % 8));
                        break;
                    }
                    bit -= 8 * field->size();
                }
                break;
            }
            case ForgeryTactic::ReplayPackage:
                forged = rounds_.front().forwarded;
                break;
            case ForgeryTactic::WithholdKeys:
            case ForgeryTactic::Mixed:
                break;
        }
        return forged;
    }

    [[nodiscard]] bool withholds(PartyId party) const {
        return is_faulty(party) && tactic_ == ForgeryTactic::WithholdKeys;
    }

    void disclose(int step, PartyId from, PartyId to, int round, std::size_t unlocks) {
        if (withholds(from)) return;
        const auto& x = keys_.block(from, otuh::KeyRole::X, round, set_);
        const auto& y = keys_.block(from, otuh::KeyRole::Y, round, set_);
        transcript_.append(step, from, to,
                           KeyDisclosure{from, round, Bytes(x.bits().begin(), x.bits().end()),
                                         Bytes(y.bits().begin(), y.bits().end()), unlocks});
    }

    bool verify_as(PartyId verifier, PartyId peer, int round, const otuh::SignaturePackage& pkg) {
        if (withholds(peer)) return false;
        const Bytes x = otuh::recover_signer_key(keys_.block(verifier, otuh::KeyRole::X, round, set_),
                                                 keys_.block(peer, otuh::KeyRole::X, round, set_));
        const Bytes y = otuh::recover_signer_key(keys_.block(verifier, otuh::KeyRole::Y, round, set_),
                                                 keys_.block(peer, otuh::KeyRole::Y, round, set_));
        return otuh::verify(pkg, x, y) == otuh::Verification::Accept;
    }

    // `receiver` gets the package from Alice and forwards it to `verifier`.
    void play_round(int round, PartyId receiver, PartyId verifier) {
        const int step = round;
        auto& x_a = keys_.block(PartyId::Alice, otuh::KeyRole::X, round, set_);
        auto& y_a = keys_.block(PartyId::Alice, otuh::KeyRole::Y, round, set_);
        const otuh::SignaturePackage original = otuh::sign(to_bytes(commander_message(round)), x_a, y_a, sampler_);
        const std::size_t original_id = transcript_.deliver(step, PartyId::Alice, receiver, original);

        const otuh::SignaturePackage forwarded = is_faulty(receiver) ? forge(original, round) : original;
        const std::size_t forwarded_id = transcript_.deliver(step, receiver, verifier, forwarded, original_id);
        disclose(step, receiver, verifier, round, forwarded_id);
        disclose(step, verifier, receiver, round, original_id);

        const bool receiver_ok = verify_as(receiver, verifier, round, original);
        const bool verifier_ok = verify_as(verifier, receiver, round, forwarded);
        transcript_.append(step, receiver, verifier, VerificationNotice{receiver, round, original_id, receiver_ok});
        transcript_.append(step, verifier, receiver, VerificationNotice{verifier, round, forwarded_id, verifier_ok});

        if (receiver_ok && verifier_ok) {
            verdict_.lists[receiver].push_back(as_string(original.message));
            verdict_.lists[verifier].push_back(as_string(forwarded.message));
        }
        if (round == 1) {
            // Delta under the default rule: what Bob forwarded, as each side saw it.
            delta_seen_[receiver] = as_string(original.message);
            delta_seen_[verifier] = as_string(forwarded.message);
        }
        rounds_.push_back({original, forwarded});
    }

    void decide() {
        for (PartyId lt : {PartyId::Bob, PartyId::Charlie}) {
            auto& list = verdict_.lists[lt];
            verdict_.loyal[lt] = !is_faulty(lt);
            if (list.empty()) {
                verdict_.outputs[lt] = Decision::none();
                continue;
            }
            const std::string delta =
                scenario_.delta_rule == DeltaRule::Fixed ? scenario_.delta_message : delta_seen_[lt];
            verdict_.outputs[lt] = Decision::of(majority(list, delta));
        }
        verdict_.loyal[PartyId::Alice] = scenario_.commander_loyal;
        const auto [ic1, ic2] = check_ic(verdict_, scenario_);
        verdict_.ic1 = ic1;
        verdict_.ic2 = ic2;
    }

    const ScenarioConfig& scenario_;
    keysim::ThreePartyKeys& keys_;
    std::size_t set_;
    RandomStream sampler_;
    RandomStream adversary_;
    ForgeryTactic tactic_;
    Transcript transcript_;
    Verdict verdict_;
    std::vector<RoundRecord> rounds_;
    std::map<PartyId, std::string> delta_seen_;
};

}  // namespace

RunResult run_three_party(const ScenarioConfig& scenario, keysim::ThreePartyKeys& keys, std::size_t set) {
    return ThreePartyRun(scenario, keys, set).run();
}

nlohmann::ordered_json to_json(const Verdict& verdict) {
    nlohmann::ordered_json j;
    j["status"] = verdict.status == Verdict::Status::Completed ? "completed" : "aborted";
    if (verdict.status == Verdict::Status::Aborted) j["abort_reason"] = verdict.abort_reason;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
    for (const auto& [party, decision] : verdict.outputs) {
        nlohmann::ordered_json d;
        d["kind"] = decision.kind == Decision::Kind::Message      ? "message"
                    : decision.kind == Decision::Kind::NoDecision ? "no_decision"
                                                                  : "undecidable";
        d["message"] = decision.kind == Decision::Kind::Message ? nlohmann::ordered_json(decision.message)
                                                                : nlohmann::ordered_json(nullptr);
        d["loyal"] = verdict.loyal.contains(party) ? verdict.loyal.at(party) : true;
        outputs[std::string(to_string(party))] = d;
    }
    j["outputs"] = outputs;
    nlohmann::ordered_json lists = nlohmann::ordered_json::object();
    for (const auto& [party, list] : verdict.lists) lists[std::string(to_string(party))] = list;
    j["lists"] = lists;
    j["ic1"] = verdict.ic1;
    j["ic2"] = verdict.ic2 ? nlohmann::ordered_json(*verdict.ic2) : nlohmann::ordered_json("n/a");
    return j;
}

}  // namespace qbasim::qba
