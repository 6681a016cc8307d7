#include <tuple>

#include "qbasim/cli.hpp"
#include "qbasim/errors.hpp"
#include "qbasim/random.hpp"

namespace qbasim::cli {

nlohmann::ordered_json to_json(const keysim::LinkStats& s) {
    nlohmann::ordered_json j;
    j["n_events"] = s.n_events;
    j["n_x"] = s.n_x;
    j["n_z"] = s.n_z;
    j["e_x_obs"] = s.e_x_obs;
    j["e_z_obs"] = s.e_z_obs;
    j["sifting_ratio"] = s.sifting_ratio();
    j["leakage_bits"] = s.leakage_bits;
    return j;
}

nlohmann::ordered_json to_json(const secparams::SecurityInputs& in) {
    nlohmann::ordered_json j;
    j["l"] = in.l;
    j["m_len"] = in.m_len;
    j["n_x"] = in.n_x;
    j["n_z"] = in.n_z;
    j["e_z"] = in.e_z;
    j["e_x"] = in.e_x;
    j["f_ec"] = in.f_ec;
    j["eps_gamma"] = in.eps_gamma;
    j["eps_ec"] = in.eps_ec;
    return j;
}

nlohmann::ordered_json to_json(const secparams::SecurityReport& r) {
    nlohmann::ordered_json j;
    j["e_p"] = r.e_p;
    j["e1_l"] = r.e1_l;
    j["h_l"] = r.h_l;
    j["pr_guess"] = r.pr_guess;
    j["log2_pr_guess"] = r.log2_pr_guess;
    j["eps_for"] = r.eps_for;
    j["log2_eps_for"] = r.log2_eps_for;
    j["eps_rep"] = r.eps_rep;
    j["eps_rob"] = r.eps_rob;
    j["eps_total"] = r.eps_total;
    j["eps_gamma"] = r.eps_gamma;
    j["clamped"] = r.clamped;
    j["insecure"] = r.insecure;
    return j;
}

KeyMaterial generate_keys(const qba::ScenarioConfig& scenario) {
    KeyMaterial km;
    km.ab = keysim::simulate_link(scenario.link_ab, scenario.n_events);
    km.ac = keysim::simulate_link(scenario.link_ac, scenario.n_events);
    RandomStream rng_ab(scenario.seed, "reconcile-ab");
    RandomStream rng_ac(scenario.seed, "reconcile-ac");
    km.rec_ab = keysim::reconcile(km.ab.keys.x_alice, km.ab.keys.x_peer, scenario.link_ab, rng_ab);
    km.rec_ac = keysim::reconcile(km.ac.keys.x_alice, km.ac.keys.x_peer, scenario.link_ac, rng_ac);
    km.permutation_seed = scenario.seed;
    if (km.rec_ab.success && km.rec_ac.success) {
        km.keys = keysim::build_three_party_keys(km.rec_ab.key, km.rec_ac.key, scenario.l, km.permutation_seed);
    }
    return km;
}

namespace {

secparams::SecurityInputs inputs_for(const qba::ScenarioConfig& s, const keysim::LinkParams& link,
                                     const keysim::LinkStats& stats, std::size_t message_bytes) {
    secparams::SecurityInputs in;
    in.l = static_cast<double>(s.l);
    in.m_len = 8.0 * static_cast<double>(message_bytes);
    in.n_x = static_cast<double>(stats.n_x);
    in.n_z = static_cast<double>(stats.n_z);
    in.e_z = stats.e_z_obs;
    in.e_x = stats.e_x_obs;
    in.f_ec = link.f_ec;
    in.eps_ec = link.eps_ec;
    return in;
}

RoundSecurity round_security(int round, const qba::ScenarioConfig& s, const keysim::LinkStats& ab,
                             const keysim::LinkStats& ac, std::size_t message_bytes) {
    RoundSecurity worst;
    bool have = false;
    for (const auto& [name, link, stats] : {std::tuple{"AB", &s.link_ab, &ab}, std::tuple{"AC", &s.link_ac, &ac}}) {
        RoundSecurity rs;
        rs.round = round;
        rs.link = name;
        rs.inputs = inputs_for(s, *link, *stats, message_bytes);
        try {
            rs.report = secparams::security_bounds(rs.inputs);
        } catch (const DomainError& e) {
            rs.error = e.what();
        }
        const bool worse = !have || (!rs.report && worst.report) ||
                           (rs.report && worst.report && rs.report->h_l < worst.report->h_l);
        if (worse) {
            worst = rs;
            have = true;
        }
    }
    return worst;
}

}  // namespace

RunReport run_pipeline(const qba::ScenarioConfig& scenario) {
    RunReport report;
    report.scenario = scenario;
    KeyMaterial km = generate_keys(scenario);
    report.link_ab = km.ab.stats;
    report.link_ac = km.ac.stats;

    const std::string round2 =
        scenario.strategy == qba::AdversaryStrategy::EquivocatingCommander ? scenario.m2 : scenario.m1;
    report.security.push_back(round_security(1, scenario, km.ab.stats, km.ac.stats, scenario.m1.size()));
    report.security.push_back(round_security(2, scenario, km.ab.stats, km.ac.stats, round2.size()));

    if (!km.keys) {
        report.verdict.status = qba::Verdict::Status::Aborted;
        report.verdict.abort_reason = "reconciliation failure";
        return report;
    }
    auto result = qba::run_three_party(scenario, *km.keys);
    report.transcript = std::move(result.transcript);
    report.verdict = std::move(result.verdict);
    return report;
}

nlohmann::ordered_json to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["status"] = r.verdict.status == qba::Verdict::Status::Completed ? "completed"
                                                                       : "aborted: " + r.verdict.abort_reason;
    j["scenario"] = scenario_to_json(r.scenario);
    j["link_stats"]["ab"] = to_json(r.link_ab);
    j["link_stats"]["ac"] = to_json(r.link_ac);
    nlohmann::ordered_json sec = nlohmann::ordered_json::array();
    for (const auto& rs : r.security) {
        nlohmann::ordered_json e;
        e["round"] = rs.round;
        e["link"] = rs.link;
        e["inputs"] = to_json(rs.inputs);
        if (rs.report) {
            e["report"] = to_json(*rs.report);
        } else {
            e["error"] = rs.error;
        }
        sec.push_back(std::move(e));
    }
    j["security"] = sec;
    j["transcript_digest"] = qba::transcript_digest(r.transcript);
    j["verdict"] = qba::to_json(r.verdict);
    j["transcript"] = qba::to_json(r.transcript);
    if (r.wall_clock_seconds) j["wall_clock_seconds"] = *r.wall_clock_seconds;
    return j;
}

}  // namespace qbasim::cli
