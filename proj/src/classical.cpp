#include "qbasim/classical.hpp"

#include <algorithm>
#include <map>

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "qbasim/errors.hpp"
#include "qbasim/random.hpp"

namespace qbasim::classical {

std::string View::serialize() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [from, message] : received) {
        nlohmann::ordered_json e;
        e["from"] = to_string(from);
        e["message"] = message;
        j.push_back(std::move(e));
    }
    return j.dump();
}

namespace {

std::string other_message(const ClassicalScenario& s, const std::string& m) { return m == s.m1 ? s.m2 : s.m1; }

std::string resolve_delta(const ClassicalScenario& s, const std::string& relayed_by_bob) {
    return s.delta.empty() ? relayed_by_bob : s.delta;
}

void finish(ClassicalResult& r, const ClassicalScenario& s, const std::vector<PartyId>& lieutenants) {
    for (PartyId lt : lieutenants) r.verdict.loyal[lt] = r.faulty != lt;
    r.verdict.loyal[PartyId::Alice] = s.commander_loyal;
    qba::LoyaltyModel model;
    model.commander_loyal = s.commander_loyal;
    model.commander_message = s.m1;
    model.lieutenants = lieutenants;
    model.faulty = r.faulty;
    const auto [ic1, ic2] = qba::check_ic(r.verdict, model);
    r.verdict.ic1 = ic1;
    r.verdict.ic2 = ic2;
    r.satisfies_one_third_bound = r.effective_party_count >= 3 * r.faulty_count + 1;
}

std::optional<PartyId> pick_faulty(const ClassicalScenario& s, const std::vector<PartyId>& lieutenants,
                                   PartyId fallback) {
    if (!s.commander_loyal) {
        if (s.faulty_lieutenant) throw DomainError("classical: at most one faulty party");
        return PartyId::Alice;
    }
    const PartyId f = s.faulty_lieutenant.value_or(fallback);
    if (std::find(lieutenants.begin(), lieutenants.end(), f) == lieutenants.end()) {
        throw DomainError("classical: faulty party must be a lieutenant");
    }
    return f;
}

}  // namespace

ClassicalResult run_classical_oral(int n_parties, const ClassicalScenario& scenario) {
    if (n_parties != 3 && n_parties != 4) throw DomainError("classical oral: n_parties must be 3 or 4");
    if (scenario.m1 == scenario.m2) throw DomainError("classical: m1 and m2 must differ");

    std::vector<PartyId> lieutenants{PartyId::Bob, PartyId::Charlie};
    if (n_parties == 4) lieutenants.push_back(PartyId::Emery);

    ClassicalResult r;
    r.faulty = pick_faulty(scenario, lieutenants, n_parties == 4 ? PartyId::Emery : PartyId::Charlie);
    r.effective_party_count = n_parties;
    r.faulty_count = 1;

    // Step 1: orders from the commander. A disloyal commander gives m2 to the
    // last lieutenant and m1 to the rest.
    std::map<PartyId, std::string> from_commander;
    for (PartyId lt : lieutenants) {
        const bool split = !scenario.commander_loyal && lt == lieutenants.back();
        from_commander[lt] = split ? scenario.m2 : scenario.m1;
        r.transcript.append(1, PartyId::Alice, lt, qba::ClassicalMessage{from_commander[lt], {}, {}});
        r.views[lt].received.emplace_back(PartyId::Alice, from_commander[lt]);
    }

    // Step 2: every lieutenant relays to every other; a faulty one lies.
    for (PartyId from : lieutenants) {
        const std::string relayed =
            r.faulty == from ? other_message(scenario, from_commander[from]) : from_commander[from];
        for (PartyId to : lieutenants) {
            if (to == from) continue;
            r.transcript.append(2, from, to, qba::ClassicalMessage{relayed, {}, {}});
            r.views[to].received.emplace_back(from, relayed);
        }
    }

    const std::string delta = resolve_delta(
        scenario, r.faulty == PartyId::Bob ? other_message(scenario, from_commander[PartyId::Bob])
                                           : from_commander[PartyId::Bob]);
    for (PartyId lt : lieutenants) {
        std::vector<std::string> list;
        for (const auto& [from, m] : r.views[lt].received) list.push_back(m);
        r.verdict.lists[lt] = list;
        if (n_parties == 3 && list[0] != list[1]) {
            // Two sources, two orders: either could be the liar.
            r.verdict.outputs[lt] = qba::Decision::undecidable();
        } else {
            r.verdict.outputs[lt] = qba::Decision::of(qba::majority(list, delta));
        }
    }
    finish(r, scenario, lieutenants);
    return r;
}

namespace {

class Authority {
public:
    Authority(std::uint64_t seed, qba::Transcript& transcript) : rng_(seed, "authority"), transcript_(transcript) {}

    void issue(PartyId party) {
        Bytes key(32);
        rng_.fill(key);
        keys_[party] = key;
        transcript_.append(0, PartyId::Authority, party, qba::AuthorityNotice{"issue_signing_key", party, true});
    }

    Bytes sign(PartyId signer, const std::string& message) const {
        const Bytes& key = keys_.at(signer);
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
             reinterpret_cast<const unsigned char*>(message.data()), message.size(), md, &len);
        return {md, md + len};
    }

    bool verify(int step, PartyId asker, PartyId signer, const std::string& message, const Bytes& signature) {
        const bool ok = sign(signer, message) == signature;
        transcript_.append(step, PartyId::Authority, asker, qba::AuthorityNotice{"verify_signature", signer, ok});
        return ok;
    }

private:
    RandomStream rng_;
    qba::Transcript& transcript_;
    std::map<PartyId, Bytes> keys_;
};

}  // namespace

ClassicalResult run_classical_signature(const ClassicalScenario& scenario) {
    if (scenario.m1 == scenario.m2) throw DomainError("classical: m1 and m2 must differ");
    const std::vector<PartyId> lieutenants{PartyId::Bob, PartyId::Charlie};

    ClassicalResult r;
    r.faulty = pick_faulty(scenario, lieutenants, PartyId::Charlie);
    r.effective_party_count = 4;
    r.faulty_count = 1;

    Authority authority(scenario.seed, r.transcript);
    for (PartyId p : {PartyId::Alice, PartyId::Bob, PartyId::Charlie}) authority.issue(p);

    struct Signed {
        std::string message;
        Bytes sigma_a;
    };
    std::map<PartyId, Signed> from_commander;
    for (PartyId lt : lieutenants) {
        const std::string m = !scenario.commander_loyal && lt == PartyId::Charlie ? scenario.m2 : scenario.m1;
        from_commander[lt] = {m, authority.sign(PartyId::Alice, m)};
        r.transcript.append(1, PartyId::Alice, lt, qba::ClassicalMessage{m, {PartyId::Alice}, from_commander[lt].sigma_a});
        if (authority.verify(1, lt, PartyId::Alice, m, from_commander[lt].sigma_a)) {
            r.views[lt].received.emplace_back(PartyId::Alice, m);
        }
    }

    std::string bob_relay;
    for (PartyId from : lieutenants) {
        const PartyId to = from == PartyId::Bob ? PartyId::Charlie : PartyId::Bob;
        Signed relay = from_commander[from];
        // A faulty lieutenant cannot produce Alice's signature on another
        // order; it can only reattach the one it holds.
        if (r.faulty == from) relay.message = other_message(scenario, relay.message);
        if (from == PartyId::Bob) bob_relay = relay.message;
        const Bytes sigma_own = authority.sign(from, relay.message);
        Bytes attached = relay.sigma_a;
        attached.insert(attached.end(), sigma_own.begin(), sigma_own.end());
        r.transcript.append(2, from, to, qba::ClassicalMessage{relay.message, {PartyId::Alice, from}, attached});
        const bool ok_a = authority.verify(2, to, PartyId::Alice, relay.message, relay.sigma_a);
        const bool ok_own = authority.verify(2, to, from, relay.message, sigma_own);
        if (ok_a && ok_own) r.views[to].received.emplace_back(from, relay.message);
    }

    const std::string delta = resolve_delta(scenario, bob_relay);
    for (PartyId lt : lieutenants) {
        std::vector<std::string> list;
        for (const auto& [from, m] : r.views[lt].received) list.push_back(m);
        r.verdict.lists[lt] = list;
        r.verdict.outputs[lt] = list.empty() ? qba::Decision::none() : qba::Decision::of(qba::majority(list, delta));
    }
    finish(r, scenario, lieutenants);
    return r;
}

nlohmann::ordered_json to_json(const ClassicalResult& result) {
    nlohmann::ordered_json j;
    j["verdict"] = qba::to_json(result.verdict);
    nlohmann::ordered_json views = nlohmann::ordered_json::object();
    for (const auto& [party, view] : result.views) views[std::string(to_string(party))] = view.serialize();
    j["views"] = views;
    j["faulty_party"] = result.faulty ? nlohmann::ordered_json(to_string(*result.faulty)) : nlohmann::ordered_json(nullptr);
    j["effective_party_count"] = result.effective_party_count;
    j["faulty_count"] = result.faulty_count;
    j["satisfies_one_third_bound"] = result.satisfies_one_third_bound;
    j["transcript"] = qba::to_json(result.transcript);
    return j;
}

}  // namespace qbasim::classical
