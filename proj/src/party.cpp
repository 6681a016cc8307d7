#include "qbasim/party.hpp"

#include <array>
#include <utility>

namespace qbasim {
namespace {
constexpr std::array<std::pair<PartyId, std::string_view>, 5> kNames{{
    {PartyId::Alice, "Alice"},
    {PartyId::Bob, "Bob"},
    {PartyId::Charlie, "Charlie"},
    {PartyId::Emery, "Emery"},
    {PartyId::Authority, "Authority"},
}};
}  // namespace

std::string_view to_string(PartyId party) {
    for (const auto& [id, name] : kNames) {
        if (id == party) return name;
    }
    return "?";
}

std::optional<PartyId> party_from_string(std::string_view name) {
    for (const auto& [id, n] : kNames) {
        if (n == name) return id;
    }
    return std::nullopt;
}

}  // namespace qbasim
