#include "cnets/metastable.hpp"

#include <algorithm>
#include <map>

#include "cnets/core.hpp"
#include "cnets/errors.hpp"

namespace cnets {

std::optional<DominationWitness> dominates(const Instance& instance, const ContractId& d,
                                           const ContractSystem& system) {
    const Contract& contract = instance.contract_at(d);
    DominationWitness witness;
    witness.dominator = d;
    for (const auto& agent : contract.participants) {
        const Menu held = restrict_system(instance, system, agent);
        if (held.empty()) {
            witness.per_agent[agent] = std::nullopt;
            continue;
        }
        const ChoiceSpec& spec = instance.spec_of(agent);
        std::optional<ContractId> beaten;
        for (const auto& a : held) {
            if (!choose(spec, Menu{a, d}).count(a)) {
                beaten = a;
                break;
            }
        }
        if (!beaten) return std::nullopt;
        witness.per_agent[agent] = beaten;
    }
    return witness;
}

MetastabilityVerdict is_metastable(const Instance& instance, const ContractSystem& system,
                                   const DominationOptions& options) {
    for (const auto& contract : instance.contracts) {
        if (options.exclude_members && system.count(contract.id)) continue;
        if (auto witness = dominates(instance, contract.id, system))
            return {false, witness};
    }
    return {true, std::nullopt};
}

Instance linearize_equipment(const Instance& instance, std::size_t cap) {
    Instance out = instance;
    for (const auto& agent : instance.agents) {
        try {
            out.equipment.at(agent) = respecting_order(instance.spec_of(agent), std::nullopt, cap);
        } catch (const PreconditionError& e) {
            throw PreconditionError("agent '" + agent + "': " + e.what());
        }
    }
    return out;
}

namespace {

std::map<AgentId, std::map<ContractId, long long>> linear_utilities(const Instance& instance) {
    std::map<AgentId, std::map<ContractId, long long>> out;
    for (const auto& agent : instance.agents) {
        const ChoiceSpec& spec = instance.spec_of(agent);
        if (!std::holds_alternative<LinearSpec>(spec))
            throw PreconditionError("agent '" + agent + "' does not have linear equipment");
        out[agent] = utility_levels(spec);
    }
    return out;
}

bool compromise_properties_hold(const Instance& instance,
                                const std::map<AgentId, std::map<ContractId, long long>>& utils,
                                const std::map<AgentId, long long>& x) {
    // nothing strictly beats x on its whole participant set
    for (const auto& contract : instance.contracts) {
        bool somewhere_leq = false;
        for (const auto& agent : contract.participants)
            if (utils.at(agent).at(contract.id) <= x.at(agent)) {
                somewhere_leq = true;
                break;
            }
        if (!somewhere_leq) return false;
    }
    // every agent holds some contract weakly above x everywhere
    for (const auto& agent : instance.agents) {
        bool justified = false;
        for (const auto& [id, level] : utils.at(agent)) {
            const Contract& contract = instance.contract_at(id);
            bool all_geq = true;
            for (const auto& other : contract.participants)
                if (x.at(other) > utils.at(other).at(id)) {
                    all_geq = false;
                    break;
                }
            if (all_geq) {
                justified = true;
                break;
            }
        }
        if (!justified) return false;
    }
    return true;
}

void require_autarkic_everywhere(const Instance& instance) {
    for (const auto& agent : instance.agents) {
        bool has = false;
        for (const auto& id : instance.contracts_of(agent))
            if (instance.contract_at(id).autarkic()) {
                has = true;
                break;
            }
        if (!has)
            throw PreconditionError("agent '" + agent + "' owns no autarkic contract; augment first");
    }
}

} // namespace

bool is_valid_compromise(const Instance& instance, const CompromiseVector& x) {
    const auto utils = linear_utilities(instance);
    for (const auto& agent : instance.agents)
        if (!x.values.count(agent)) return false;
    return compromise_properties_hold(instance, utils, x.values);
}

CompromiseVector find_compromise(const Instance& instance) {
    const auto utils = linear_utilities(instance);
    require_autarkic_everywhere(instance);

    // per-agent grids of attainable levels, descending
    std::vector<AgentId> order = instance.agents;
    std::vector<std::vector<long long>> grid;
    for (const auto& agent : order) {
        std::vector<long long> levels;
        for (const auto& [id, level] : utils.at(agent)) levels.push_back(level);
        std::sort(levels.begin(), levels.end(), std::greater<>());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        grid.push_back(std::move(levels));
    }

    std::vector<std::size_t> pick(order.size(), 0);
    while (true) {
        std::map<AgentId, long long> x;
        for (std::size_t i = 0; i < order.size(); ++i) x[order[i]] = grid[i][pick[i]];
        if (compromise_properties_hold(instance, utils, x)) return {std::move(x)};

        std::size_t i = order.size();
        while (i > 0) {
            --i;
            if (++pick[i] < grid[i].size()) break;
            pick[i] = 0;
            if (i == 0)
                throw InternalError(
                    "no compromise vector exists on the utility grid; the existence "
                    "guarantee failed");
        }
    }
}

ContractSystem system_from_compromise(const Instance& instance, const CompromiseVector& x) {
    const auto utils = linear_utilities(instance);
    for (const auto& agent : instance.agents)
        if (!x.values.count(agent))
            throw InputError("compromise vector misses agent '" + agent + "'");
    if (!compromise_properties_hold(instance, utils, x.values))
        throw InputError("the vector is not a valid compromise for this instance");

    ContractSystem out;
    for (const auto& contract : instance.contracts) {
        bool everywhere_geq = true;
        for (const auto& agent : contract.participants)
            if (utils.at(agent).at(contract.id) < x.values.at(agent)) {
                everywhere_geq = false;
                break;
            }
        if (everywhere_geq) out.insert(contract.id);
    }
    return out;
}

ContractSystem solve_metastable(const Instance& instance, std::size_t cap) {
    const Instance pruned = prune_null_contracts(instance, cap);
    const Instance linear = linearize_equipment(pruned, cap);
    const Instance augmented = augment_autarkic(linear, {.add_always = false});

    const CompromiseVector x = find_compromise(augmented);
    ContractSystem system = system_from_compromise(augmented, x);

    for (const auto& contract : augmented.contracts)
        if (!linear.find_contract(contract.id)) system.erase(contract.id);
    return system;
}

bool is_minimal_metastable(const Instance& instance, const ContractSystem& system) {
    if (!is_metastable(instance, system).metastable)
        throw PreconditionError("is_minimal_metastable requires a meta-stable system");
    for (const auto& id : system) {
        const Contract& contract = instance.contract_at(id);
        bool monogamous = false;
        for (const auto& agent : contract.participants)
            if (restrict_system(instance, system, agent) == Menu{id}) {
                monogamous = true;
                break;
            }
        if (!monogamous) return false;
    }
    return true;
}

ContractSystem minimize_metastable(const Instance& instance, const ContractSystem& system) {
    if (!is_metastable(instance, system).metastable)
        throw PreconditionError("minimize requires a meta-stable system");
    ContractSystem current = system;
    while (true) {
        std::optional<ContractId> removable;
        for (const auto& id : current) {
            const Contract& contract = instance.contract_at(id);
            bool monogamous = false;
            for (const auto& agent : contract.participants)
                if (restrict_system(instance, current, agent) == Menu{id}) {
                    monogamous = true;
                    break;
                }
            if (!monogamous) {
                removable = id;
                break;
            }
        }
        if (!removable) return current;
        current.erase(*removable);
    }
}

PerturbedInstance perturb_ties(const Instance& instance, const ContractSystem& system) {
    for (const auto& [agent, spec] : instance.equipment)
        if (!std::holds_alternative<LinearSpec>(spec) && !std::holds_alternative<WeakSpec>(spec))
            throw InputError("perturb_ties is defined for linear/weak equipment only");
    if (!is_minimal_metastable(instance, system))
        throw PreconditionError("perturb_ties requires a minimal meta-stable system");

    PerturbedInstance out;
    out.instance = instance;
    for (const auto& agent : instance.agents) {
        const auto levels = utility_levels(instance.spec_of(agent));
        const Menu held = restrict_system(instance, system, agent);

        PerturbationPlan plan;
        std::map<ContractId, long long> perturbed;
        for (const auto& [id, level] : levels) perturbed[id] = 2 * level;

        if (!held.empty()) {
            long long margin = 0;
            bool first = true;
            for (const auto& id : held) {
                if (first || levels.at(id) < margin) margin = levels.at(id);
                first = false;
            }
            for (const auto& [id, level] : levels) {
                if (level != margin) continue;
                if (system.count(id)) {
                    if (!plan.anchor)
                        plan.anchor = id; // least id of the marginal members kept fixed
                    else
                        plan.raised.insert(id);
                } else {
                    plan.lowered.insert(id);
                }
            }
            for (const auto& id : plan.raised) perturbed[id] += 1;
            for (const auto& id : plan.lowered) perturbed[id] -= 1;
        }

        std::vector<ContractId> ranking;
        for (const auto& [id, level] : perturbed) ranking.push_back(id);
        std::stable_sort(ranking.begin(), ranking.end(),
                         [&](const ContractId& a, const ContractId& b) {
                             if (perturbed.at(a) != perturbed.at(b))
                                 return perturbed.at(a) > perturbed.at(b);
                             return a < b;
                         });
        out.instance.equipment.at(agent) = LinearSpec{std::move(ranking)};
        out.plans[agent] = std::move(plan);
    }
    return out;
}

std::vector<ComponentReport> classify_components(const Instance& instance,
                                                 const ContractSystem& system) {
    for (const auto& contract : instance.contracts)
        if (contract.participants.size() > 2)
            throw InputError("contract '" + contract.id + "' is neither autarkic nor binary");

    std::vector<std::pair<ContractId, std::pair<AgentId, AgentId>>> edges;
    for (const auto& id : system) {
        const Contract& c = instance.contract_at(id);
        if (c.participants.size() == 2)
            edges.push_back({id, {c.participants[0], c.participants[1]}});
    }

    std::map<AgentId, std::vector<AgentId>> adjacent;
    for (const auto& [id, ends] : edges) {
        adjacent[ends.first].push_back(ends.second);
        adjacent[ends.second].push_back(ends.first);
    }

    std::vector<ComponentReport> out;
    std::set<AgentId> seen;
    for (const auto& start : instance.agents) {
        if (seen.count(start)) continue;
        std::vector<AgentId> frontier{start};
        std::set<AgentId> component;
        seen.insert(start);
        component.insert(start);
        while (!frontier.empty()) {
            const AgentId cur = frontier.back();
            frontier.pop_back();
            for (const auto& next : adjacent[cur])
                if (seen.insert(next).second) {
                    component.insert(next);
                    frontier.push_back(next);
                }
        }

        ComponentReport report;
        report.agents.assign(component.begin(), component.end());
        for (const auto& [id, ends] : edges)
            if (component.count(ends.first)) report.edges.push_back(id);
        std::sort(report.edges.begin(), report.edges.end());

        if (report.edges.empty()) {
            report.kind = ComponentKind::Isolated;
            out.push_back(std::move(report));
            continue;
        }

        // a star has one vertex on every edge and monogamous leaves
        std::optional<AgentId> center;
        for (const auto& agent : report.agents) {
            bool on_all = true;
            for (const auto& id : report.edges)
                if (!instance.contract_at(id).has_participant(agent)) {
                    on_all = false;
                    break;
                }
            if (!on_all) continue;
            const bool monogamous = restrict_system(instance, system, agent).size() == 1;
            if (!center || (restrict_system(instance, system, *center).size() == 1 && !monogamous))
                center = agent;
        }
        if (!center) {
            report.kind = ComponentKind::Other;
            out.push_back(std::move(report));
            continue;
        }
        bool leaves_ok = true;
        for (const auto& agent : report.agents) {
            if (agent == *center) continue;
            if (restrict_system(instance, system, agent).size() != 1) {
                leaves_ok = false;
                break;
            }
            report.leaves.push_back(agent);
        }
        report.kind = leaves_ok ? ComponentKind::Star : ComponentKind::Other;
        report.center = center;
        if (!leaves_ok) {
            report.center.reset();
            report.leaves.clear();
        }
        out.push_back(std::move(report));
    }
    return out;
}

} // namespace cnets
