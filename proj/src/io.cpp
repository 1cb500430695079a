#include "cnets/io.hpp"

#include <fstream>
#include <sstream>

#include "cnets/errors.hpp"

namespace cnets::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<ContractId> id_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + " must be an array of ids");
    std::vector<ContractId> out;
    for (const auto& item : j) {
        if (!item.is_string()) throw InputError(what + " must contain strings only");
        out.push_back(item.get<std::string>());
    }
    return out;
}

json id_array(const std::vector<ContractId>& ids) {
    json out = json::array();
    for (const auto& id : ids) out.push_back(id);
    return out;
}

json menu_array(const Menu& menu) {
    return id_array({menu.begin(), menu.end()});
}

} // namespace

json spec_to_json(const ChoiceSpec& spec) {
    return std::visit(
        overloaded{
            [](const LinearSpec& s) {
                return json{{"type", "linear"}, {"ranking", id_array(s.ranking)}};
            },
            [](const WeakSpec& s) {
                json tiers = json::array();
                for (const auto& tier : s.tiers) tiers.push_back(id_array(tier));
                return json{{"type", "weak"}, {"tiers", tiers}};
            },
            [](const QuotaSpec& s) {
                return json{{"type", "quota"}, {"ranking", id_array(s.ranking)}, {"b", s.quota}};
            },
            [](const UnionSpec& s) {
                json parts = json::array();
                for (const auto& part : s.parts) parts.push_back(id_array(part.ranking));
                return json{{"type", "union"}, {"parts", parts}};
            },
            [](const TableSpec& s) {
                json entries = json::array();
                for (std::uint32_t m = 0; m < s.choices.size(); ++m)
                    entries.push_back(json::array(
                        {menu_array(menu_of(s.ground, m)), menu_array(menu_of(s.ground, s.choices[m]))}));
                return json{{"type", "table"}, {"ground", id_array(s.ground)}, {"entries", entries}};
            },
        },
        spec);
}

ChoiceSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw InputError("a choice spec must be an object with a \"type\" field");
    const std::string type = j["type"].get<std::string>();
    if (type == "linear") return LinearSpec{id_list(j.at("ranking"), "ranking")};
    if (type == "weak") {
        WeakSpec out;
        if (!j.contains("tiers") || !j["tiers"].is_array())
            throw InputError("weak spec needs a \"tiers\" array");
        for (const auto& tier : j["tiers"]) out.tiers.push_back(id_list(tier, "tier"));
        return out;
    }
    if (type == "quota") {
        if (!j.contains("b") || !j["b"].is_number_integer())
            throw InputError("quota spec needs an integer \"b\"");
        return QuotaSpec{id_list(j.at("ranking"), "ranking"), j["b"].get<int>()};
    }
    if (type == "union") {
        UnionSpec out;
        if (!j.contains("parts") || !j["parts"].is_array())
            throw InputError("union spec needs a \"parts\" array");
        for (const auto& part : j["parts"]) out.parts.push_back({id_list(part, "part")});
        return out;
    }
    if (type == "table") {
        TableSpec out;
        out.ground = id_list(j.at("ground"), "ground");
        if (!std::is_sorted(out.ground.begin(), out.ground.end()))
            throw InputError("table ground must be sorted");
        if (out.ground.size() > 24) throw InputError("table ground is too large");
        out.choices.assign(std::size_t{1} << out.ground.size(), 0);
        std::vector<bool> seen(out.choices.size(), false);
        if (!j.contains("entries") || !j["entries"].is_array())
            throw InputError("table spec needs an \"entries\" array");
        for (const auto& entry : j["entries"]) {
            if (!entry.is_array() || entry.size() != 2)
                throw InputError("each table entry must be a [menu, choice] pair");
            const auto menu_ids = id_list(entry[0], "menu");
            const auto choice_ids = id_list(entry[1], "choice");
            const auto m = mask_of(out.ground, Menu(menu_ids.begin(), menu_ids.end()));
            if (seen[m]) throw InputError("table lists a menu twice");
            seen[m] = true;
            out.choices[m] = mask_of(out.ground, Menu(choice_ids.begin(), choice_ids.end()));
        }
        for (std::size_t m = 0; m < seen.size(); ++m)
            if (!seen[m]) throw InputError("table does not cover every menu");
        return out;
    }
    throw InputError("unknown choice spec type '" + type + "'");
}

json instance_to_json(const Instance& instance) {
    json contracts = json::array();
    for (const auto& c : instance.contracts) {
        json jc{{"id", c.id}, {"participants", id_array(c.participants)}};
        if (c.autarkic_dummy) jc["autarkic_dummy"] = true;
        contracts.push_back(jc);
    }
    json preferences = json::object();
    for (const auto& [agent, spec] : instance.equipment) preferences[agent] = spec_to_json(spec);
    return json{{"agents", id_array(instance.agents)},
                {"contracts", contracts},
                {"preferences", preferences}};
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw InputError("an instance must be a JSON object");
    Instance out;
    out.agents = id_list(j.at("agents"), "agents");
    if (!j.contains("contracts") || !j["contracts"].is_array())
        throw InputError("instance needs a \"contracts\" array");
    for (const auto& jc : j["contracts"]) {
        if (!jc.is_object() || !jc.contains("id") || !jc["id"].is_string())
            throw InputError("each contract needs a string \"id\"");
        Contract c;
        c.id = jc["id"].get<std::string>();
        c.participants = id_list(jc.at("participants"), "participants");
        if (jc.contains("autarkic_dummy")) c.autarkic_dummy = jc["autarkic_dummy"].get<bool>();
        out.contracts.push_back(std::move(c));
    }
    if (j.contains("preferences")) {
        if (!j["preferences"].is_object()) throw InputError("\"preferences\" must be an object");
        for (const auto& [agent, jspec] : j["preferences"].items())
            out.equipment.emplace(agent, spec_from_json(jspec));
    }
    out.normalize();
    return out;
}

json system_to_json(const ContractSystem& system) {
    return id_array({system.begin(), system.end()});
}

ContractSystem system_from_json(const json& j) {
    const auto ids = id_list(j, "contract system");
    return ContractSystem(ids.begin(), ids.end());
}

json compromise_to_json(const CompromiseVector& x) {
    json values = json::object();
    for (const auto& [agent, level] : x.values) values[agent] = level;
    return json{{"values", values}};
}

CompromiseVector compromise_from_json(const json& j) {
    if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
        throw InputError("a compromise vector must be {\"values\": {agent: level}}");
    CompromiseVector out;
    for (const auto& [agent, level] : j["values"].items()) {
        if (!level.is_number_integer()) throw InputError("compromise levels must be integers");
        out.values[agent] = level.get<long long>();
    }
    return out;
}

json split_map_to_json(const SplitMap& map) {
    json agent_map = json::object();
    for (const auto& [from, to] : map.agent_map) agent_map[from] = to;
    json contract_map = json::object();
    for (const auto& [from, to] : map.contract_map) contract_map[from] = to;
    json steps = json::array();
    for (const auto& step : map.steps) {
        json copies = json::object();
        for (const auto& [original, list] : step.contract_copies) copies[original] = id_array(list);
        json parts = json::array();
        for (const auto& part : step.parts) parts.push_back(spec_to_json(part));
        steps.push_back(json{{"agent", step.agent},
                             {"new_agents", id_array(step.new_agents)},
                             {"parts", parts},
                             {"contract_copies", copies}});
    }
    return json{{"agent_map", agent_map}, {"contract_map", contract_map}, {"steps", steps}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

Instance load_instance(const std::string& path) {
    return instance_from_json(read_json_file(path));
}

ChoiceSpec load_spec(const std::string& path) {
    return spec_from_json(read_json_file(path));
}

ContractSystem parse_system_arg(const std::string& arg) {
    std::string trimmed = arg;
    const auto first = trimmed.find_first_not_of(" \t");
    if (first != std::string::npos && trimmed[first] == '[') {
        try {
            return system_from_json(json::parse(trimmed));
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("cannot parse system argument: ") + e.what());
        }
    }
    return system_from_json(read_json_file(arg));
}

} // namespace cnets::io
