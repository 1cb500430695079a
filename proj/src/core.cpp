#include "cnets/core.hpp"

#include <algorithm>
#include <set>

#include "cnets/errors.hpp"

namespace cnets {

bool Contract::has_participant(const AgentId& agent) const {
    return std::binary_search(participants.begin(), participants.end(), agent);
}

bool Instance::has_agent(const AgentId& agent) const {
    return std::binary_search(agents.begin(), agents.end(), agent);
}

const Contract* Instance::find_contract(const ContractId& id) const {
    auto it = std::lower_bound(contracts.begin(), contracts.end(), id,
                               [](const Contract& c, const ContractId& v) { return c.id < v; });
    if (it == contracts.end() || it->id != id) return nullptr;
    return &*it;
}

const Contract& Instance::contract_at(const ContractId& id) const {
    const Contract* c = find_contract(id);
    if (!c) throw InputError("unknown contract id '" + id + "'");
    return *c;
}

const ChoiceSpec& Instance::spec_of(const AgentId& agent) const {
    auto it = equipment.find(agent);
    if (it == equipment.end()) throw InputError("agent '" + agent + "' has no equipment");
    return it->second;
}

std::vector<ContractId> Instance::contracts_of(const AgentId& agent) const {
    std::vector<ContractId> out;
    for (const auto& c : contracts)
        if (c.has_participant(agent)) out.push_back(c.id);
    return out;
}

std::vector<ContractId> Instance::contract_ids() const {
    std::vector<ContractId> out;
    out.reserve(contracts.size());
    for (const auto& c : contracts) out.push_back(c.id);
    return out;
}

void Instance::normalize() {
    std::sort(agents.begin(), agents.end());
    for (auto& c : contracts) std::sort(c.participants.begin(), c.participants.end());
    std::sort(contracts.begin(), contracts.end(),
              [](const Contract& a, const Contract& b) { return a.id < b.id; });
}

std::vector<Violation> validate(const Instance& instance) {
    std::vector<Violation> out;

    std::set<AgentId> agent_set;
    for (const auto& a : instance.agents) {
        if (a.empty()) out.push_back({a, "empty agent id"});
        if (!agent_set.insert(a).second) out.push_back({a, "duplicate agent id"});
    }
    if (!std::is_sorted(instance.agents.begin(), instance.agents.end()))
        out.push_back({"agents", "agents are not in sorted order"});

    std::set<ContractId> contract_set;
    for (const auto& c : instance.contracts) {
        if (c.id.empty()) out.push_back({c.id, "empty contract id"});
        if (!contract_set.insert(c.id).second) out.push_back({c.id, "duplicate contract id"});
        if (c.participants.empty()) out.push_back({c.id, "empty participant set"});
        if (!std::is_sorted(c.participants.begin(), c.participants.end()))
            out.push_back({c.id, "participants are not in sorted order"});
        std::set<AgentId> seen;
        for (const auto& p : c.participants) {
            if (!seen.insert(p).second) out.push_back({c.id, "duplicate participant '" + p + "'"});
            if (!agent_set.count(p)) out.push_back({c.id, "unknown participant '" + p + "'"});
        }
    }
    if (!std::is_sorted(instance.contracts.begin(), instance.contracts.end(),
                        [](const Contract& a, const Contract& b) { return a.id < b.id; }))
        out.push_back({"contracts", "contracts are not in sorted order"});

    for (const auto& [agent, spec] : instance.equipment)
        if (!agent_set.count(agent)) out.push_back({agent, "equipment for unknown agent"});
    for (const auto& a : instance.agents) {
        auto it = instance.equipment.find(a);
        if (it == instance.equipment.end()) {
            out.push_back({a, "missing equipment"});
            continue;
        }
        for (const auto& problem : spec_problems(it->second)) out.push_back({a, problem});
        const auto ground = ground_of(it->second);
        const auto wanted = instance.contracts_of(a);
        if (ground != wanted) out.push_back({a, "equipment/contract mismatch"});
    }
    return out;
}

Menu restrict_system(const Instance& instance, const ContractSystem& system, const AgentId& agent) {
    if (!instance.has_agent(agent)) throw InputError("unknown agent id '" + agent + "'");
    Menu out;
    for (const auto& id : system) {
        const Contract& c = instance.contract_at(id);
        if (c.has_participant(agent)) out.insert(id);
    }
    return out;
}

namespace {

// An autarkic contract already sitting at the bottom of the agent's order
// can play the dummy's role, so no dummy is needed for that agent.
bool has_worst_autarkic(const Instance& instance, const ChoiceSpec& spec) {
    const auto levels = utility_levels(spec);
    long long min_level = 0;
    bool first = true;
    for (const auto& [id, level] : levels) {
        if (first || level < min_level) min_level = level;
        first = false;
    }
    for (const auto& [id, level] : levels) {
        if (level != min_level) continue;
        if (instance.contract_at(id).autarkic()) return true;
    }
    return false;
}

} // namespace

Instance augment_autarkic(const Instance& instance, const AugmentOptions& options) {
    for (const auto& [agent, spec] : instance.equipment)
        if (!std::holds_alternative<LinearSpec>(spec) && !std::holds_alternative<WeakSpec>(spec))
            throw InputError("augmentation is defined for linear/weak equipment only; agent '" +
                             agent + "' has another kind");

    Instance out = instance;
    for (const auto& agent : instance.agents) {
        const ChoiceSpec& spec = instance.spec_of(agent);
        const bool skip = !options.add_always &&
                          !instance.contracts_of(agent).empty() &&
                          has_worst_autarkic(instance, spec);
        if (skip) continue;

        ContractId dummy_id = "dummy#" + agent;
        if (out.find_contract(dummy_id))
            throw InputError("cannot augment: contract id '" + dummy_id + "' already exists");
        out.contracts.push_back({dummy_id, {agent}, /*autarkic_dummy=*/true});

        ChoiceSpec& target = out.equipment.at(agent);
        if (auto* lin = std::get_if<LinearSpec>(&target)) {
            lin->ranking.push_back(dummy_id);
        } else {
            std::get<WeakSpec>(target).tiers.push_back({dummy_id});
        }
    }
    out.normalize();
    return out;
}

Instance prune_null_contracts(const Instance& instance, std::size_t cap) {
    Menu doomed;
    for (const auto& agent : instance.agents) {
        const Menu nulls = largest_null_set(instance.spec_of(agent), cap);
        doomed.insert(nulls.begin(), nulls.end());
    }
    if (doomed.empty()) return instance;

    Instance out;
    out.agents = instance.agents;
    for (const auto& c : instance.contracts)
        if (!doomed.count(c.id)) out.contracts.push_back(c);
    for (const auto& agent : instance.agents) {
        Menu keep;
        for (const auto& id : out.contracts_of(agent)) keep.insert(id);
        out.equipment.emplace(agent, restrict_spec(instance.spec_of(agent), keep));
    }
    return out;
}

} // namespace cnets
