#include "cnets/reduction.hpp"

#include <algorithm>

#include "cnets/errors.hpp"

namespace cnets {

namespace {

std::string copy_name(const std::string& base, std::size_t part) {
    return base + "#" + std::to_string(part + 1);
}

SplitMap identity_map(const Instance& instance) {
    SplitMap map;
    for (const auto& a : instance.agents) map.agent_map[a] = a;
    for (const auto& c : instance.contracts) map.contract_map[c.id] = c.id;
    return map;
}

} // namespace

std::pair<Instance, SplitMap> split_agent(const Instance& instance, const AgentId& agent,
                                          const std::vector<ChoiceSpec>& parts, std::size_t cap) {
    if (!instance.has_agent(agent)) throw InputError("unknown agent id '" + agent + "'");
    if (parts.empty()) throw InputError("split_agent needs at least one part");

    const auto own = instance.contracts_of(agent);
    const ChoiceSpec& f0 = instance.spec_of(agent);

    const TableSpec whole = tabulate(f0, cap);
    std::vector<std::uint32_t> joined(whole.choices.size(), 0);
    for (const auto& part : parts) {
        if (ground_of(part) != own)
            throw InputError("a split part does not cover C('" + agent + "') exactly");
        if (!nonempty_valued(part, cap))
            throw InputError("a split part is not non-empty-valued");
        const TableSpec pt = tabulate(part, cap);
        for (std::size_t m = 0; m < joined.size(); ++m) joined[m] |= pt.choices[m];
    }
    if (joined != whole.choices)
        throw InputError("the parts do not union to agent '" + agent + "''s choice function");

    SplitStep step;
    step.agent = agent;
    step.parts = parts;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const AgentId fresh = copy_name(agent, k);
        if (instance.has_agent(fresh))
            throw InputError("cannot split: agent id '" + fresh + "' already exists");
        step.new_agents.push_back(fresh);
    }
    for (const auto& c : own) {
        std::vector<ContractId> copies;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const ContractId fresh = copy_name(c, k);
            if (instance.find_contract(fresh))
                throw InputError("cannot split: contract id '" + fresh + "' already exists");
            copies.push_back(fresh);
        }
        step.contract_copies[c] = copies;
    }

    Instance out;
    for (const auto& a : instance.agents)
        if (a != agent) out.agents.push_back(a);
    out.agents.insert(out.agents.end(), step.new_agents.begin(), step.new_agents.end());

    for (const auto& c : instance.contracts) {
        if (!c.has_participant(agent)) {
            out.contracts.push_back(c);
            continue;
        }
        for (std::size_t k = 0; k < parts.size(); ++k) {
            Contract copy;
            copy.id = step.contract_copies.at(c.id)[k];
            copy.autarkic_dummy = c.autarkic_dummy;
            for (const auto& p : c.participants)
                copy.participants.push_back(p == agent ? step.new_agents[k] : p);
            out.contracts.push_back(std::move(copy));
        }
    }
    out.normalize();

    SplitMap map;
    map.steps.push_back(step);
    for (const auto& a : instance.agents)
        if (a != agent) map.agent_map[a] = a;
    for (const auto& fresh : step.new_agents) map.agent_map[fresh] = agent;
    for (const auto& c : instance.contracts) {
        if (!c.has_participant(agent)) {
            map.contract_map[c.id] = c.id;
        } else {
            for (const auto& fresh : step.contract_copies.at(c.id)) map.contract_map[fresh] = c.id;
        }
    }

    for (std::size_t k = 0; k < parts.size(); ++k) {
        std::map<ContractId, ContractId> rename;
        for (const auto& c : own) rename[c] = step.contract_copies.at(c)[k];
        out.equipment.emplace(step.new_agents[k], rename_spec(parts[k], rename));
    }
    for (const auto& a : instance.agents) {
        if (a == agent) continue;
        const auto shared = restrict_system(
            instance, ContractSystem(own.begin(), own.end()), a);
        if (shared.empty()) {
            out.equipment.emplace(a, instance.spec_of(a));
            continue;
        }
        std::map<ContractId, ContractId> projection;
        for (const auto& c : out.contracts_of(a)) projection[c] = map.contract_map.at(c);
        out.equipment.emplace(a, pullback(projection, instance.spec_of(a), cap));
    }
    return {std::move(out), std::move(map)};
}

std::pair<Instance, SplitMap> reduce_to_weak_orders(const Instance& instance, std::size_t cap) {
    for (const auto& agent : instance.agents) {
        if (!nonempty_valued(instance.spec_of(agent), cap))
            throw InputError("agent '" + agent +
                             "' has an empty-valued choice function; prune null contracts first");
    }

    Instance current = instance;
    SplitMap total = identity_map(instance);

    while (true) {
        const AgentId* target = nullptr;
        for (const auto& a : current.agents) {
            const ChoiceSpec& spec = current.spec_of(a);
            if (!std::holds_alternative<LinearSpec>(spec) &&
                !std::holds_alternative<WeakSpec>(spec)) {
                target = &a;
                break;
            }
        }
        if (!target) break;

        const ChoiceSpec spec = current.spec_of(*target);
        if (auto weak = weak_representation(spec, cap)) {
            current.equipment.at(*target) = *weak;
            continue;
        }

        std::vector<ChoiceSpec> parts;
        for (auto& order : am_decompose(spec, cap)) parts.emplace_back(std::move(order));
        auto [next, step_map] = split_agent(current, *target, parts, cap);

        SplitMap merged;
        merged.steps = total.steps;
        merged.steps.push_back(step_map.steps.front());
        for (const auto& [fresh, mid] : step_map.agent_map)
            merged.agent_map[fresh] = total.agent_map.at(mid);
        for (const auto& [fresh, mid] : step_map.contract_map)
            merged.contract_map[fresh] = total.contract_map.at(mid);
        total = std::move(merged);
        current = std::move(next);
    }
    return {std::move(current), std::move(total)};
}

ContractSystem project_system(const SplitMap& map, const ContractSystem& system) {
    ContractSystem out;
    for (const auto& id : system) {
        auto it = map.contract_map.find(id);
        if (it == map.contract_map.end())
            throw InputError("contract '" + id + "' is not covered by the split map");
        out.insert(it->second);
    }
    return out;
}

namespace {

ContractSystem lift_once(const SplitStep& step, const ContractSystem& system) {
    ContractSystem out;
    Menu touching;
    for (const auto& id : system) {
        if (step.contract_copies.count(id))
            touching.insert(id);
        else
            out.insert(id);
    }
    for (std::size_t k = 0; k < step.parts.size(); ++k) {
        for (const auto& c : choose(step.parts[k], touching))
            out.insert(step.contract_copies.at(c)[k]);
    }
    return out;
}

} // namespace

ContractSystem lift_stable(const Instance& pre_split, const SplitStep& step,
                           const ContractSystem& stable_system) {
    if (!is_stable(pre_split, stable_system).stable)
        throw PreconditionError("lift_stable requires a stable system");
    return lift_once(step, stable_system);
}

ContractSystem lift_through(const Instance& original, const SplitMap& map,
                            const ContractSystem& stable_system) {
    if (!is_stable(original, stable_system).stable)
        throw PreconditionError("lift_through requires a system stable in the original instance");
    ContractSystem current = stable_system;
    for (const auto& step : map.steps) current = lift_once(step, current);
    return current;
}

} // namespace cnets
