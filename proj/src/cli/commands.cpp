#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qbasim/classical.hpp"
#include "qbasim/cli.hpp"
#include "qbasim/errors.hpp"
#include "qbasim/netplan.hpp"

namespace qbasim::cli {

namespace {

std::string dump(const nlohmann::ordered_json& j) {
    return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError(path.string() + ": cannot write file");
    f << text;
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << dump(j);
    } else {
        write_file(out_path, dump(j));
    }
}

qba::ScenarioConfig scenario_from(const std::string& path, const std::optional<std::uint64_t>& seed) {
    qba::ScenarioConfig s = load_scenario(path);
    if (seed) {
        s.seed = *seed;
        derive_link_seeds(s);
    }
    return s;
}

nlohmann::ordered_json party_blocks(const std::vector<otuh::KeyBlock>& blocks, PartyId party, std::size_t bits) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["party"] = to_string(party);
    j["block_bits"] = bits;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        nlohmann::ordered_json b;
        b["set"] = i / keysim::kBlocksPerSignatureSet;
        b["round"] = blocks[i].round();
        b["role"] = otuh::to_string(blocks[i].role());
        b["hex"] = to_hex(blocks[i].bits());
        arr.push_back(std::move(b));
    }
    j["blocks"] = arr;
    return j;
}

nlohmann::ordered_json reconciliation_json(const keysim::Reconciliation& r) {
    nlohmann::ordered_json j;
    j["success"] = r.success;
    j["error_fraction"] = r.error_fraction;
    j["leakage_bits"] = r.leakage_bits;
    j["key_bits"] = r.key.size();
    return j;
}

int cmd_keygen(const std::string& config, const std::optional<std::uint64_t>& seed, const std::string& out_dir,
               std::ostream& out) {
    const qba::ScenarioConfig s = scenario_from(config, seed);
    const KeyMaterial km = generate_keys(s);

    std::filesystem::create_directories(out_dir);
    nlohmann::ordered_json stats;
    stats["schema_version"] = kReportSchemaVersion;
    stats["scenario"] = scenario_to_json(s);
    stats["ab"] = to_json(km.ab.stats);
    stats["ac"] = to_json(km.ac.stats);
    stats["reconciliation"]["ab"] = reconciliation_json(km.rec_ab);
    stats["reconciliation"]["ac"] = reconciliation_json(km.rec_ac);
    stats["permutation_seed"] = km.permutation_seed;
    stats["signature_sets"] = km.keys ? km.keys->signature_sets() : 0;
    const std::filesystem::path dir(out_dir);
    write_file(dir / "link_stats.json", dump(stats));
    if (!km.keys) {
        out << "aborted: reconciliation failure\n";
        return kExitAborted;
    }
    write_file(dir / "alice.json", dump(party_blocks(km.keys->alice, PartyId::Alice, km.keys->block_bits)));
    write_file(dir / "bob.json", dump(party_blocks(km.keys->bob, PartyId::Bob, km.keys->block_bits)));
    write_file(dir / "charlie.json", dump(party_blocks(km.keys->charlie, PartyId::Charlie, km.keys->block_bits)));
    out << "wrote " << km.keys->signature_sets() << " signature sets to " << out_dir << "\n";
    return kExitOk;
}

int cmd_qba(const std::string& config, const std::optional<std::uint64_t>& seed, const std::string& out_path,
            bool timing, std::ostream& out) {
    const qba::ScenarioConfig s = scenario_from(config, seed);
    const auto start = std::chrono::steady_clock::now();
    RunReport report = run_pipeline(s);
    if (timing) {
        report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    emit(to_json(report), out_path, out);
    return report.verdict.status == qba::Verdict::Status::Completed ? kExitOk : kExitAborted;
}

using Setter = double secparams::SecurityInputs::*;

const std::map<std::string, Setter>& security_fields() {
    static const std::map<std::string, Setter> fields{
        {"l", &secparams::SecurityInputs::l},
        {"m_len", &secparams::SecurityInputs::m_len},
        {"n_x", &secparams::SecurityInputs::n_x},
        {"n_z", &secparams::SecurityInputs::n_z},
        {"e_z", &secparams::SecurityInputs::e_z},
        {"e_x", &secparams::SecurityInputs::e_x},
        {"f_ec", &secparams::SecurityInputs::f_ec},
        {"eps_gamma", &secparams::SecurityInputs::eps_gamma},
        {"eps_ec", &secparams::SecurityInputs::eps_ec},
    };
    return fields;
}

struct Sweep {
    Setter field;
    std::vector<double> values;
};

Sweep parse_sweep(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("--sweep '" + spec + "': expected name=v1,v2,...");
    const std::string name = spec.substr(0, eq);
    const auto it = security_fields().find(name);
    if (it == security_fields().end()) throw ConfigError("--sweep: unknown parameter '" + name + "'");
    Sweep sw{it->second, {}};
    std::stringstream list(spec.substr(eq + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
        try {
            std::size_t used = 0;
            sw.values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--sweep " + name + ": '" + item + "' is not a number");
        }
    }
    if (sw.values.empty()) throw ConfigError("--sweep " + name + ": no values");
    return sw;
}

int cmd_security(const secparams::SecurityInputs& base, const std::vector<std::string>& sweep_specs,
                 const std::string& out_path, std::ostream& out) {
    std::vector<Sweep> sweeps;
    for (const auto& spec : sweep_specs) sweeps.push_back(parse_sweep(spec));

    std::vector<secparams::SecurityInputs> grid{base};
    for (const auto& sw : sweeps) {
        std::vector<secparams::SecurityInputs> next;
        for (const auto& in : grid) {
            for (double v : sw.values) {
                auto copy = in;
                copy.*sw.field = v;
                next.push_back(copy);
            }
        }
        grid = std::move(next);
    }

    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const auto& in : grid) {
        nlohmann::ordered_json e;
        e["inputs"] = to_json(in);
        try {
            e["report"] = to_json(secparams::security_bounds(in));
        } catch (const DomainError& err) {
            throw ConfigError(std::string("security: ") + err.what());
        }
        results.push_back(std::move(e));
    }
    j["results"] = results;
    emit(j, out_path, out);
    return kExitOk;
}

int cmd_netplan(std::uint64_t users, const std::optional<std::uint64_t>& subnets, std::uint64_t parties,
                std::uint64_t faulty, const std::string& out_path, std::ostream& out) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    const netplan::SubnetChoice choice = netplan::optimal_subnets(users);
    const netplan::NetworkPlan plan = netplan::channels_required(users, subnets.value_or(choice.k));
    j["plan"]["n_users"] = plan.n_users;
    j["plan"]["k_subnets"] = plan.k_subnets;
    j["plan"]["channels_intra"] = plan.channels_intra;
    j["plan"]["channels_inter"] = plan.channels_inter;
    j["plan"]["channels_total"] = plan.channels_total;
    j["plan"]["channels_intra_all_subnets"] = plan.channels_intra_all_subnets;
    j["plan"]["channels_total_all_subnets"] = plan.channels_total_all_subnets;
    j["optimal_subnets"]["k"] = choice.k;
    j["optimal_subnets"]["closed_form"] = choice.closed_form;
    j["comm_complexity"]["n_parties"] = parties;
    j["comm_complexity"]["f_faulty"] = faulty;
    j["comm_complexity"]["qds_executions"] = netplan::comm_complexity(parties, faulty).str();
    emit(j, out_path, out);
    return kExitOk;
}

int cmd_classical(const std::string& protocol, const classical::ClassicalScenario& scenario,
                  const std::string& out_path, std::ostream& out) {
    classical::ClassicalResult r;
    if (protocol == "oral3") {
        r = classical::run_classical_oral(3, scenario);
    } else if (protocol == "oral4") {
        r = classical::run_classical_oral(4, scenario);
    } else {
        r = classical::run_classical_signature(scenario);
    }
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["protocol"] = protocol;
    j.update(classical::to_json(r));
    emit(j, out_path, out);
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Three-party quantum Byzantine agreement simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    bool timing = false;

    auto* keygen = app.add_subcommand("keygen", "Simulate both links and write three-party key blocks");
    keygen->add_option("--config,config", config, "Scenario JSON")->required();
    keygen->add_option("--seed", seed, "Override the scenario seed");
    std::string key_dir = "keys";
    keygen->add_option("--out", key_dir, "Output directory")->capture_default_str();

    auto* qba_cmd = app.add_subcommand("qba", "Run the full agreement pipeline and print a report");
    qba_cmd->add_option("--config,config", config, "Scenario JSON")->required();
    qba_cmd->add_option("--seed", seed, "Override the scenario seed");
    qba_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
    qba_cmd->add_flag("--timing", timing, "Include wall-clock duration (breaks byte-identical reports)");

    secparams::SecurityInputs sec;
    std::vector<std::string> sweeps;
    auto* security = app.add_subcommand("security", "Finite-key security bounds");
    security->add_option("--l", sec.l, "Key block length in bits")->capture_default_str();
    security->add_option("--m-len", sec.m_len, "Message length in bits")->capture_default_str();
    security->add_option("--n-x", sec.n_x, "Key-basis bit count")->capture_default_str();
    security->add_option("--n-z", sec.n_z, "Test-basis bit count")->capture_default_str();
    security->add_option("--e-z", sec.e_z, "Test-basis error rate")->capture_default_str();
    security->add_option("--e-x", sec.e_x, "Key-basis error rate")->capture_default_str();
    security->add_option("--f-ec", sec.f_ec, "Error-correction efficiency")->capture_default_str();
    security->add_option("--eps-gamma", sec.eps_gamma, "Sampling failure parameter")->capture_default_str();
    security->add_option("--eps-ec", sec.eps_ec, "Error-correction failure probability")->capture_default_str();
    security->add_option("--sweep", sweeps, "name=v1,v2,... (repeatable; grids multiply)");
    security->add_option("--out", out_path, "Write the report here instead of stdout");

    std::uint64_t users = 9;
    std::optional<std::uint64_t> subnets;
    std::uint64_t parties = 3;
    std::uint64_t faulty = 1;
    auto* net = app.add_subcommand("netplan", "Channel budgets and multiparty complexity");
    net->add_option("--users", users, "Number of users")->capture_default_str();
    net->add_option("--subnets", subnets, "Subnet count (default: optimal)");
    net->add_option("--parties", parties, "Parties for the complexity count")->capture_default_str();
    net->add_option("--faulty", faulty, "Faulty parties for the complexity count")->capture_default_str();
    net->add_option("--out", out_path, "Write the report here instead of stdout");

    std::string protocol = "oral4";
    bool commander_disloyal = false;
    std::string faulty_name;
    classical::ClassicalScenario cs;
    auto* cls = app.add_subcommand("classical", "Classical oral and signature baselines");
    cls->add_option("--protocol", protocol, "oral3, oral4 or signature")
        ->check(CLI::IsMember({"oral3", "oral4", "signature"}))
        ->capture_default_str();
    cls->add_flag("--commander-disloyal", commander_disloyal, "Make Alice the faulty party");
    cls->add_option("--faulty", faulty_name, "Faulty lieutenant (Bob, Charlie or Emery)");
    cls->add_option("--m1", cs.m1, "Commander's order")->capture_default_str();
    cls->add_option("--m2", cs.m2, "Conflicting order")->capture_default_str();
    cls->add_option("--delta", cs.delta, "Tie-break value (default: what Bob relays)");
    cls->add_option("--seed", cs.seed, "Authority key seed")->capture_default_str();
    cls->add_option("--out", out_path, "Write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*keygen) return cmd_keygen(config, seed, key_dir, out);
        if (*qba_cmd) return cmd_qba(config, seed, out_path, timing, out);
        if (*security) return cmd_security(sec, sweeps, out_path, out);
        if (*net) return cmd_netplan(users, subnets, parties, faulty, out_path, out);
        if (*cls) {
            cs.commander_loyal = !commander_disloyal;
            if (!faulty_name.empty()) {
                const auto p = party_from_string(faulty_name);
                if (!p) throw ConfigError("--faulty: unknown party '" + faulty_name + "'");
                cs.faulty_lieutenant = *p;
            }
            return cmd_classical(protocol, cs, out_path, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ProtocolError& e) {
        err << "error: " << e.what() << "\n";
        return kExitAborted;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qbasim::cli
