#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qbasim/bytes.hpp"
#include "qbasim/otuh.hpp"
#include "qbasim/party.hpp"

namespace qbasim::qba {

/// A signature package on the wire. Forwarded copies reference the delivery
/// they were forwarded from.
struct PackageDelivery {
    std::size_t package_id = 0;
    otuh::SignaturePackage package;
    std::optional<std::size_t> forwarded_from;
};

/// A verifier revealing its X and Y blocks for one round so the other
/// verifier can recover the signer's keys.
struct KeyDisclosure {
    PartyId owner = PartyId::Bob;
    int round = 1;
    Bytes x;
    Bytes y;
    std::size_t unlocks_package = 0;
};

struct VerificationNotice {
    PartyId verifier = PartyId::Bob;
    int round = 1;
    std::size_t package_id = 0;
    bool accepted = false;
};

/// Plain message of the classical baselines, with the parties whose
/// signatures are attached (empty for the oral protocol).
struct ClassicalMessage {
    std::string message;
    std::vector<PartyId> signed_by;
    Bytes signature;
};

/// An interaction with the trusted certificate authority of the classical
/// signature baseline.
struct AuthorityNotice {
    std::string action;
    PartyId subject = PartyId::Alice;
    bool result = true;
};

using Payload = std::variant<PackageDelivery, KeyDisclosure, VerificationNotice, ClassicalMessage, AuthorityNotice>;

struct TranscriptEntry {
    int step = 0;
    PartyId sender = PartyId::Alice;
    PartyId receiver = PartyId::Alice;
    Payload payload;
};

class Transcript {
public:
    void append(int step, PartyId sender, PartyId receiver, Payload payload);

    /// Registers a package delivery and returns its id.
    std::size_t deliver(int step, PartyId sender, PartyId receiver, const otuh::SignaturePackage& package,
                        std::optional<std::size_t> forwarded_from = std::nullopt);

    [[nodiscard]] const std::vector<TranscriptEntry>& entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }

private:
    std::vector<TranscriptEntry> entries_;
    std::size_t next_package_id_ = 0;
};

/// Step indices never decrease, and every key disclosure or verification
/// notice refers to a package delivered at an earlier position.
bool is_causal(const Transcript& transcript);

nlohmann::ordered_json to_json(const Transcript& transcript);

/// Lowercase hex SHA-256 of the compact JSON serialisation.
std::string transcript_digest(const Transcript& transcript);

}  // namespace qbasim::qba
