#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qbasim/keysim.hpp"
#include "qbasim/qba.hpp"
#include "qbasim/secparams.hpp"

namespace qbasim::cli {

inline constexpr int kReportSchemaVersion = 1;

/// Exit codes of the qbasim tool.
enum ExitCode : int { kExitOk = 0, kExitAborted = 1, kExitUsage = 2 };

/// A malformed or invalid configuration. The message names the source, and
/// the line and field when they can be located.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a scenario document. Unknown keys, wrong types and invalid values
/// are ConfigErrors. Link seeds are always derived from the scenario seed.
qba::ScenarioConfig parse_scenario(std::string_view text, std::string_view source = "<config>");
qba::ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Sets the per-link seeds from the scenario seed ("link-AB", "link-AC").
void derive_link_seeds(qba::ScenarioConfig& scenario);

nlohmann::ordered_json scenario_to_json(const qba::ScenarioConfig& scenario);
nlohmann::ordered_json to_json(const keysim::LinkParams& params);
nlohmann::ordered_json to_json(const keysim::LinkStats& stats);
nlohmann::ordered_json to_json(const secparams::SecurityInputs& inputs);
nlohmann::ordered_json to_json(const secparams::SecurityReport& report);

/// Key layer of a run: both links simulated and reconciled, then the
/// three-party blocks. `keys` is empty when a reconciliation failed.
struct KeyMaterial {
    keysim::LinkSimulation ab;
    keysim::LinkSimulation ac;
    keysim::Reconciliation rec_ab;
    keysim::Reconciliation rec_ac;
    std::uint64_t permutation_seed = 0;
    std::optional<keysim::ThreePartyKeys> keys;
};

/// Throws ProtocolError ("insufficient key material ...") when the sifted
/// keys do not fill one signature set.
KeyMaterial generate_keys(const qba::ScenarioConfig& scenario);

struct RoundSecurity {
    int round = 1;
    std::string link;  ///< the link whose statistics gave the weaker bound
    secparams::SecurityInputs inputs;
    std::optional<secparams::SecurityReport> report;
    std::string error;  ///< set when the realized statistics are outside the calculator's domain
};

struct RunReport {
    qba::ScenarioConfig scenario;
    keysim::LinkStats link_ab;
    keysim::LinkStats link_ac;
    std::vector<RoundSecurity> security;
    qba::Transcript transcript;
    qba::Verdict verdict;
    std::optional<double> wall_clock_seconds;
};

/// keysim -> reconciliation -> two signing rounds -> majority -> IC checks.
RunReport run_pipeline(const qba::ScenarioConfig& scenario);

/// Reports are byte-identical for identical scenarios unless the wall-clock
/// field was filled in.
nlohmann::ordered_json to_json(const RunReport& report);

/// Entry point of the qbasim tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qbasim::cli
