#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "qbasim/cli.hpp"
#include "qbasim/errors.hpp"
#include "qbasim/random.hpp"

namespace qbasim::cli {

namespace {

using json = nlohmann::json;

// Line (1-based) of the first occurrence of "key" in the text, or 0.
std::size_t line_of_key(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    const auto pos = text.find(quoted);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

class Reader {
public:
    Reader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

    [[noreturn]] void fail(std::string_view field, const std::string& what) const {
        std::ostringstream os;
        os << source_;
        const std::string_view leaf = field.substr(field.rfind('.') == std::string_view::npos ? 0 : field.rfind('.') + 1);
        if (const std::size_t line = line_of_key(text_, leaf); line != 0) os << ":" << line;
        os << ": field '" << field << "': " << what;
        throw ConfigError(os.str());
    }

    void check_keys(const json& obj, std::string_view where, const std::set<std::string>& allowed) const {
        for (const auto& [key, value] : obj.items()) {
            if (!allowed.contains(key)) {
                fail(where.empty() ? key : std::string(where) + "." + key, "unknown field");
            }
        }
    }

    template <typename T>
    T get(const json& obj, std::string_view where, const std::string& key, T fallback) const {
        if (!obj.contains(key)) return fallback;
        const std::string field = where.empty() ? key : std::string(where) + "." + key;
        const json& v = obj.at(key);
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) fail(field, "expected a boolean");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) fail(field, "expected a string");
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) fail(field, "expected a number");
        } else {
            if (!v.is_number_unsigned()) fail(field, "expected a non-negative integer");
        }
        return v.get<T>();
    }

private:
    std::string_view text_;
    std::string_view source_;
};

keysim::LinkParams parse_link(const Reader& r, const json& obj, const std::string& where) {
    if (!obj.is_object()) r.fail(where, "expected an object");
    r.check_keys(obj, where, {"qber_z", "qber_x", "pair_rate", "f_ec", "eps_ec", "retain_x", "retain_z"});
    keysim::LinkParams p;
    p.qber_z = r.get(obj, where, "qber_z", p.qber_z);
    p.qber_x = r.get(obj, where, "qber_x", p.qber_x);
    p.pair_rate = r.get(obj, where, "pair_rate", p.pair_rate);
    p.f_ec = r.get(obj, where, "f_ec", p.f_ec);
    p.eps_ec = r.get(obj, where, "eps_ec", p.eps_ec);
    p.retain_x = r.get(obj, where, "retain_x", p.retain_x);
    p.retain_z = r.get(obj, where, "retain_z", p.retain_z);
    try {
        p.validate();
    } catch (const DomainError& e) {
        r.fail(where, e.what());
    }
    return p;
}

}  // namespace

void derive_link_seeds(qba::ScenarioConfig& scenario) {
    scenario.link_ab.seed = RandomStream(scenario.seed, "link-AB").next_u64();
    scenario.link_ac.seed = RandomStream(scenario.seed, "link-AC").next_u64();
}

qba::ScenarioConfig parse_scenario(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto prefix = text.substr(0, upto);
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(prefix.begin(), prefix.end(), '\n'));
        const auto nl = prefix.rfind('\n');
        const std::size_t column = nl == std::string_view::npos ? upto : upto - nl - 1;
        std::ostringstream os;
        os << source << ":" << line << ":" << column << ": malformed JSON";
        throw ConfigError(os.str());
    }

    const Reader r(text, source);
    if (!doc.is_object()) r.fail("<root>", "expected an object");
    r.check_keys(doc, "",
                 {"schema_version", "seed", "adversary_strategy", "forgery_tactic", "commander_loyal", "faulty_party",
                  "messages", "delta_rule", "delta_message", "l", "n_events", "link_params"});

    qba::ScenarioConfig s;
    if (!doc.contains("schema_version")) r.fail("schema_version", "missing");
    const auto version = r.get<std::uint64_t>(doc, "", "schema_version", 0);
    if (version != qba::kScenarioSchemaVersion) {
        r.fail("schema_version", "unsupported version " + std::to_string(version));
    }
    s.schema_version = static_cast<int>(version);
    s.seed = r.get(doc, "", "seed", s.seed);

    const auto strategy = r.get<std::string>(doc, "", "adversary_strategy", "honest");
    if (auto v = qba::strategy_from_string(strategy)) {
        s.strategy = *v;
    } else {
        r.fail("adversary_strategy", "unknown strategy '" + strategy + "'");
    }
    const auto tactic = r.get<std::string>(doc, "", "forgery_tactic", "substitute_message");
    if (auto v = qba::tactic_from_string(tactic)) {
        s.tactic = *v;
    } else {
        r.fail("forgery_tactic", "unknown tactic '" + tactic + "'");
    }

    const bool loyalty_given = doc.contains("commander_loyal");
    s.commander_loyal = r.get(doc, "", "commander_loyal", true);
    const bool faulty_given = doc.contains("faulty_party");
    if (faulty_given) {
        const json& f = doc.at("faulty_party");
        if (f.is_null() || (f.is_string() && f.get<std::string>() == "none")) {
            s.faulty_party.reset();
        } else if (f.is_string()) {
            const auto party = party_from_string(f.get<std::string>());
            if (!party || (*party != PartyId::Alice && *party != PartyId::Bob && *party != PartyId::Charlie)) {
                r.fail("faulty_party", "expected Alice, Bob, Charlie or none");
            }
            s.faulty_party = *party;
        } else {
            r.fail("faulty_party", "expected a party name or null");
        }
    }

    if (doc.contains("messages")) {
        const json& m = doc.at("messages");
        if (!m.is_array() || m.size() != 2 || !m[0].is_string() || !m[1].is_string()) {
            r.fail("messages", "expected [m1, m2] as two strings");
        }
        s.m1 = m[0].get<std::string>();
        s.m2 = m[1].get<std::string>();
        if (s.m1.empty() || s.m2.empty()) r.fail("messages", "messages must be nonempty");
    }

    const auto rule = r.get<std::string>(doc, "", "delta_rule", "forwarded_by_bob");
    if (rule == "forwarded_by_bob") {
        s.delta_rule = qba::DeltaRule::ForwardedByBob;
    } else if (rule == "fixed") {
        s.delta_rule = qba::DeltaRule::Fixed;
    } else {
        r.fail("delta_rule", "expected 'forwarded_by_bob' or 'fixed'");
    }
    s.delta_message = r.get(doc, "", "delta_message", s.delta_message);
    s.l = r.get<std::size_t>(doc, "", "l", s.l);
    s.n_events = r.get(doc, "", "n_events", s.n_events);
    if (s.n_events == 0) r.fail("n_events", "must be positive");

    if (doc.contains("link_params")) {
        const json& links = doc.at("link_params");
        if (!links.is_object()) r.fail("link_params", "expected an object with 'ab' and 'ac'");
        r.check_keys(links, "link_params", {"ab", "ac"});
        if (links.contains("ab")) s.link_ab = parse_link(r, links.at("ab"), "link_params.ab");
        if (links.contains("ac")) s.link_ac = parse_link(r, links.at("ac"), "link_params.ac");
    }
    derive_link_seeds(s);

    try {
        s.normalize(faulty_given, loyalty_given);
    } catch (const DomainError& e) {
        const std::string what = e.what();
        std::string field = "<scenario>";
        for (const char* key : {"faulty_party", "commander_loyal", "l", "delta_message", "messages"}) {
            if (what.find(key) != std::string::npos) {
                field = key;
                break;
            }
        }
        if (what.find("equivocating") != std::string::npos) field = "messages";
        r.fail(field, what);
    }
    return s;
}

qba::ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

nlohmann::ordered_json to_json(const keysim::LinkParams& p) {
    nlohmann::ordered_json j;
    j["qber_z"] = p.qber_z;
    j["qber_x"] = p.qber_x;
    j["pair_rate"] = p.pair_rate;
    j["f_ec"] = p.f_ec;
    j["eps_ec"] = p.eps_ec;
    j["retain_x"] = p.retain_x;
    j["retain_z"] = p.retain_z;
    j["seed"] = p.seed;
    return j;
}

nlohmann::ordered_json scenario_to_json(const qba::ScenarioConfig& s) {
    nlohmann::ordered_json j;
    j["schema_version"] = s.schema_version;
    j["seed"] = s.seed;
    j["adversary_strategy"] = qba::to_string(s.strategy);
    j["forgery_tactic"] = qba::to_string(s.tactic);
    j["commander_loyal"] = s.commander_loyal;
    j["faulty_party"] = s.faulty_party ? nlohmann::ordered_json(to_string(*s.faulty_party)) : nlohmann::ordered_json(nullptr);
    j["messages"] = {s.m1, s.m2};
    j["delta_rule"] = s.delta_rule == qba::DeltaRule::Fixed ? "fixed" : "forwarded_by_bob";
    if (s.delta_rule == qba::DeltaRule::Fixed) j["delta_message"] = s.delta_message;
    j["l"] = s.l;
    j["n_events"] = s.n_events;
    j["link_params"]["ab"] = to_json(s.link_ab);
    j["link_params"]["ac"] = to_json(s.link_ac);
    return j;
}

}  // namespace qbasim::cli
