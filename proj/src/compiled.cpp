#include "cnets/compiled.hpp"

#include <algorithm>

#include "cnets/errors.hpp"

namespace cnets {

std::uint32_t CompiledAgent::local_mask(std::uint32_t system_mask) const {
    std::uint32_t out = 0;
    for (std::size_t k = 0; k < contract_indices.size(); ++k)
        if (system_mask & (std::uint32_t{1} << contract_indices[k]))
            out |= std::uint32_t{1} << k;
    return out;
}

std::uint32_t CompiledAgent::local_bit(int global_index) const {
    auto it = std::lower_bound(contract_indices.begin(), contract_indices.end(), global_index);
    if (it == contract_indices.end() || *it != global_index) return 0;
    return std::uint32_t{1} << (it - contract_indices.begin());
}

CompiledInstance CompiledInstance::build(const Instance& instance, std::size_t ground_cap) {
    CompiledInstance out;
    out.source = &instance;
    out.contract_ids = instance.contract_ids();
    if (out.contract_ids.size() > 24)
        throw ResourceError("instance has too many contracts for mask-based enumeration");

    out.participants.resize(out.contract_ids.size());
    for (std::size_t c = 0; c < instance.contracts.size(); ++c)
        for (const auto& p : instance.contracts[c].participants)
            out.participants[c].push_back(static_cast<int>(
                std::lower_bound(instance.agents.begin(), instance.agents.end(), p) -
                instance.agents.begin()));

    for (const auto& agent : instance.agents) {
        CompiledAgent ca;
        ca.id = agent;
        const auto own = instance.contracts_of(agent);
        for (const auto& id : own)
            ca.contract_indices.push_back(out.contract_index(id));
        const TableSpec table = tabulate(instance.spec_of(agent), ground_cap);
        // tabulate grounds are sorted, so local bit order matches contract order
        ca.choice_table = table.choices;
        out.agents.push_back(std::move(ca));
    }
    return out;
}

int CompiledInstance::contract_index(const ContractId& id) const {
    auto it = std::lower_bound(contract_ids.begin(), contract_ids.end(), id);
    if (it == contract_ids.end() || *it != id) return -1;
    return static_cast<int>(it - contract_ids.begin());
}

int CompiledInstance::agent_index(const AgentId& id) const {
    const auto& agents_list = source->agents;
    auto it = std::lower_bound(agents_list.begin(), agents_list.end(), id);
    if (it == agents_list.end() || *it != id) return -1;
    return static_cast<int>(it - agents_list.begin());
}

ContractSystem CompiledInstance::system_of(std::uint32_t mask) const {
    ContractSystem out;
    for (std::size_t c = 0; c < contract_ids.size(); ++c)
        if (mask & (std::uint32_t{1} << c)) out.insert(contract_ids[c]);
    return out;
}

std::uint32_t CompiledInstance::mask_of_system(const ContractSystem& system) const {
    std::uint32_t mask = 0;
    for (const auto& id : system) {
        const int c = contract_index(id);
        if (c < 0) throw InputError("unknown contract id '" + id + "'");
        mask |= std::uint32_t{1} << c;
    }
    return mask;
}

} // namespace cnets
