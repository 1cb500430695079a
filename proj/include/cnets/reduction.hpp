#ifndef CNETS_REDUCTION_HPP
#define CNETS_REDUCTION_HPP

#include <map>
#include <utility>
#include <vector>

#include "cnets/stability.hpp"

namespace cnets {

/// One agent-splitting event. `parts` are choice specs over the pre-split
/// ids of C(agent); `contract_copies[c][k]` is the copy of c handed to the
/// k-th new agent.
struct SplitStep {
    AgentId agent;
    std::vector<AgentId> new_agents;
    std::vector<ChoiceSpec> parts;
    std::map<ContractId, std::vector<ContractId>> contract_copies;
};

/// Provenance of a reduction: total maps from the ids of the reduced
/// instance back to the original ones, plus the splits that produced them.
struct SplitMap {
    std::map<AgentId, AgentId> agent_map;
    std::map<ContractId, ContractId> contract_map;
    std::vector<SplitStep> steps;
};

/// Replace one agent by one new agent per part. Each part must be
/// non-empty-valued and the parts must union to the agent's choice function
/// on every menu of C(agent). Contracts touching the agent are duplicated
/// per part; every other participant's spec is pulled back along the
/// projection.
std::pair<Instance, SplitMap> split_agent(const Instance& instance,
                                          const AgentId& agent,
                                          const std::vector<ChoiceSpec>& parts,
                                          std::size_t cap = kDefaultGroundCap);

/// Split agents until every choice function is given by a linear or weak
/// order. Specs that already equal some weak order on every menu are
/// rewritten in weak form without splitting.
std::pair<Instance, SplitMap> reduce_to_weak_orders(const Instance& instance,
                                                    std::size_t cap = kDefaultGroundCap);

/// Image of a reduced-instance system under the contract map.
ContractSystem project_system(const SplitMap& map, const ContractSystem& system);

/// Lift a stable system through one split: contracts avoiding the split
/// agent are copied verbatim and the k-th new agent receives the copies of
/// f_k(S(agent)). The input must be stable in the pre-split instance.
ContractSystem lift_stable(const Instance& pre_split,
                           const SplitStep& step,
                           const ContractSystem& stable_system);

/// Compose lift_stable over all steps of a reduction.
ContractSystem lift_through(const Instance& original,
                            const SplitMap& map,
                            const ContractSystem& stable_system);

} // namespace cnets

#endif
