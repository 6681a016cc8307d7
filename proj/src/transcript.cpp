#include "qbasim/transcript.hpp"

#include <limits>
#include <set>
#include <type_traits>

#include <openssl/evp.h>

#include "qbasim/errors.hpp"

namespace qbasim::qba {

void Transcript::append(int step, PartyId sender, PartyId receiver, Payload payload) {
    entries_.push_back({step, sender, receiver, std::move(payload)});
}

std::size_t Transcript::deliver(int step, PartyId sender, PartyId receiver, const otuh::SignaturePackage& package,
                                std::optional<std::size_t> forwarded_from) {
    const std::size_t id = next_package_id_++;
    append(step, sender, receiver, PackageDelivery{id, package, forwarded_from});
    return id;
}

bool is_causal(const Transcript& transcript) {
    std::set<std::size_t> delivered;
    int last_step = std::numeric_limits<int>::min();
    for (const auto& entry : transcript.entries()) {
        if (entry.step < last_step) return false;
        last_step = entry.step;
        bool ok = true;
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, PackageDelivery>) {
                    if (p.forwarded_from && !delivered.contains(*p.forwarded_from)) ok = false;
                    delivered.insert(p.package_id);
                } else if constexpr (std::is_same_v<T, KeyDisclosure>) {
                    ok = delivered.contains(p.unlocks_package);
                } else if constexpr (std::is_same_v<T, VerificationNotice>) {
                    ok = delivered.contains(p.package_id);
                }
            },
            entry.payload);
        if (!ok) return false;
    }
    return true;
}

namespace {

nlohmann::ordered_json payload_json(const Payload& payload) {
    using nlohmann::ordered_json;
    return std::visit(
        [](const auto& p) -> ordered_json {
            using T = std::decay_t<decltype(p)>;
            ordered_json j;
            if constexpr (std::is_same_v<T, PackageDelivery>) {
                j["type"] = "signature_package";
                j["package_id"] = p.package_id;
                j["forwarded_from"] = p.forwarded_from ? ordered_json(*p.forwarded_from) : ordered_json(nullptr);
                j["round"] = p.package.round;
                j["message_hex"] = to_hex(p.package.message);
                j["sig"] = to_hex(p.package.sig);
                j["p"] = to_hex(p.package.p);
            } else if constexpr (std::is_same_v<T, KeyDisclosure>) {
                j["type"] = "key_disclosure";
                j["owner"] = to_string(p.owner);
                j["round"] = p.round;
                j["unlocks_package"] = p.unlocks_package;
                j["x"] = to_hex(p.x);
                j["y"] = to_hex(p.y);
            } else if constexpr (std::is_same_v<T, VerificationNotice>) {
                j["type"] = "verification";
                j["verifier"] = to_string(p.verifier);
                j["round"] = p.round;
                j["package_id"] = p.package_id;
                j["accepted"] = p.accepted;
            } else if constexpr (std::is_same_v<T, ClassicalMessage>) {
                j["type"] = "classical_message";
                j["message"] = p.message;
                ordered_json signers = ordered_json::array();
                for (PartyId s : p.signed_by) signers.push_back(to_string(s));
                j["signed_by"] = signers;
                j["signature"] = to_hex(p.signature);
            } else {
                j["type"] = "authority";
                j["action"] = p.action;
                j["subject"] = to_string(p.subject);
                j["result"] = p.result;
                j["trusted_third_party"] = true;
            }
            return j;
        },
        payload);
}

}  // namespace

nlohmann::ordered_json to_json(const Transcript& transcript) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& e : transcript.entries()) {
        nlohmann::ordered_json j;
        j["step"] = e.step;
        j["sender"] = to_string(e.sender);
        j["receiver"] = to_string(e.receiver);
        j["payload"] = payload_json(e.payload);
        out.push_back(std::move(j));
    }
    return out;
}

std::string transcript_digest(const Transcript& transcript) {
    const std::string text = to_json(transcript).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("transcript_digest: SHA-256 failed");
    }
    return to_hex(std::span<const std::uint8_t>(md, len));
}

}  // namespace qbasim::qba
