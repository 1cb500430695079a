#ifndef CNETS_METASTABLE_HPP
#define CNETS_METASTABLE_HPP

#include <optional>
#include <vector>

#include "cnets/core.hpp"

namespace cnets {

/// Evidence that a contract dominates a system: for every participant of
/// the dominator, either S(i) is empty (mapped value is nullopt) or some
/// member of S(i) loses the pairwise choice against it.
struct DominationWitness {
    ContractId dominator;
    std::map<AgentId, std::optional<ContractId>> per_agent;
};

/// Witness iff d dominates S: for each participant i of d, S(i) is empty or
/// contains a contract a with a ∉ f_i({a, d}).
std::optional<DominationWitness> dominates(const Instance& instance,
                                           const ContractId& d,
                                           const ContractSystem& system);

struct DominationOptions {
    /// Restrict the dominator scan to contracts outside the system. By
    /// default members of S may dominate it too.
    bool exclude_members = false;
};

struct MetastabilityVerdict {
    bool metastable = false;
    std::optional<DominationWitness> witness;
};

/// No contract dominates the system.
MetastabilityVerdict is_metastable(const Instance& instance,
                                   const ContractSystem& system,
                                   const DominationOptions& options = {});

/// Replace every choice function by a linear order respecting it.
Instance linearize_equipment(const Instance& instance, std::size_t cap = kDefaultGroundCap);

/// Per-agent utility threshold. Valid when (1) no contract strictly beats it
/// on its whole participant set and (2) every agent has a contract weakly
/// beating it on its whole participant set.
struct CompromiseVector {
    std::map<AgentId, long long> values;
    bool operator==(const CompromiseVector&) const = default;
};

bool is_valid_compromise(const Instance& instance, const CompromiseVector& x);

/// Search the finite grid of per-agent utility levels, in descending
/// lexicographic order over agents sorted by id, for the first valid
/// compromise. Requires linear equipment and an autarkic contract per agent.
CompromiseVector find_compromise(const Instance& instance);

/// S = {c : x(i) ≤ u_i(c) for every participant i}.
ContractSystem system_from_compromise(const Instance& instance, const CompromiseVector& x);

/// Full pipeline: prune null contracts, linearize, augment with dummy
/// autarkic contracts, take the threshold system of a compromise, and drop
/// the dummies again.
ContractSystem solve_metastable(const Instance& instance, std::size_t cap = kDefaultGroundCap);

/// A meta-stable system is minimal iff every member has a monogamous
/// participant (an agent for which it is the only held contract).
bool is_minimal_metastable(const Instance& instance, const ContractSystem& system);

/// Shrink a meta-stable system to a minimal one by repeatedly removing the
/// least-id contract without a monogamous participant.
ContractSystem minimize_metastable(const Instance& instance, const ContractSystem& system);

/// How one agent's ties get broken: the anchor keeps its level, `raised`
/// members of the marginal tier move just above it, `lowered` ones just
/// below.
struct PerturbationPlan {
    std::optional<ContractId> anchor;
    Menu raised;
    Menu lowered;
};

struct PerturbedInstance {
    Instance instance;
    std::map<AgentId, PerturbationPlan> plans;
};

/// Break the ties of weak equipment around a minimal meta-stable system so
/// that the system stays meta-stable under the resulting linear orders.
/// Utilities are doubled and shifted by ±1, so everything stays integral.
PerturbedInstance perturb_ties(const Instance& instance, const ContractSystem& system);

enum class ComponentKind { Isolated, Star, Other };

struct ComponentReport {
    std::vector<AgentId> agents;
    std::vector<ContractId> edges;
    ComponentKind kind = ComponentKind::Isolated;
    std::optional<AgentId> center;
    std::vector<AgentId> leaves;
};

/// Connected components of the graph formed by the binary members of S.
/// Every non-autarkic contract of the instance must be binary.
std::vector<ComponentReport> classify_components(const Instance& instance,
                                                 const ContractSystem& system);

} // namespace cnets

#endif
