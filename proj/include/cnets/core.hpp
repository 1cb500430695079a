#ifndef CNETS_CORE_HPP
#define CNETS_CORE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cnets/choice.hpp"

namespace cnets {

using AgentId = std::string;

/// A hyperedge: a contract shared by one or more agents. Contracts with a
/// single participant are autarkic; `autarkic_dummy` marks the ones added by
/// augment_autarkic.
struct Contract {
    ContractId id;
    std::vector<AgentId> participants; // sorted, no duplicates
    bool autarkic_dummy = false;

    bool autarkic() const { return participants.size() == 1; }
    bool has_participant(const AgentId& agent) const;
    bool operator==(const Contract&) const = default;
};

/// An equipped hypergraph: agents, contracts, and one choice spec per agent
/// covering exactly the contracts that agent participates in. Agents and
/// contracts are kept in sorted-id order so every enumeration is
/// reproducible. Instances are immutable in use; all operations return new
/// values.
struct Instance {
    std::vector<AgentId> agents;
    std::vector<Contract> contracts;
    std::map<AgentId, ChoiceSpec> equipment;

    bool has_agent(const AgentId& agent) const;
    const Contract* find_contract(const ContractId& id) const;
    const Contract& contract_at(const ContractId& id) const; // InputError when absent
    const ChoiceSpec& spec_of(const AgentId& agent) const;   // InputError when absent

    /// C(i): ids of the contracts agent i participates in, sorted.
    std::vector<ContractId> contracts_of(const AgentId& agent) const;
    std::vector<ContractId> contract_ids() const;

    /// Sort agents, contracts and participant lists into canonical order.
    void normalize();

    bool operator==(const Instance&) const = default;
};

using ContractSystem = std::set<ContractId>;

struct Violation {
    std::string subject;
    std::string rule;
    bool operator==(const Violation&) const = default;
};

/// All invariant violations of an instance; empty iff well formed.
std::vector<Violation> validate(const Instance& instance);

/// S(i): the members of S that agent i participates in.
Menu restrict_system(const Instance& instance, const ContractSystem& system, const AgentId& agent);

struct AugmentOptions {
    /// When false, agents that already own an autarkic contract sitting at
    /// the bottom of their order are left unchanged.
    bool add_always = false;
};

/// Add a dummy autarkic contract per agent, ranked strictly below everything
/// the agent already has. Defined for linear/weak equipment only.
Instance augment_autarkic(const Instance& instance, const AugmentOptions& options = {});

/// Drop every contract that lies in some participant's largest null set and
/// restrict the equipment accordingly. Choices on the remaining contracts
/// are unchanged.
Instance prune_null_contracts(const Instance& instance, std::size_t cap = kDefaultGroundCap);

} // namespace cnets

#endif
