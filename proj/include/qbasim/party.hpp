#pragma once

#include <optional>
#include <string_view>

namespace qbasim {

/// Participants. Alice is the commanding general; Bob and Charlie are the
/// two lieutenants. Emery is the third lieutenant of the four-party classical
/// baseline and Authority is the trusted certificate authority required by
/// the classical signature baseline.
enum class PartyId { Alice, Bob, Charlie, Emery, Authority };

std::string_view to_string(PartyId party);
std::optional<PartyId> party_from_string(std::string_view name);

}  // namespace qbasim
