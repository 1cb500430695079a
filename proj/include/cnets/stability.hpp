#ifndef CNETS_STABILITY_HPP
#define CNETS_STABILITY_HPP

#include <optional>
#include <vector>

#include "cnets/core.hpp"

namespace cnets {

/// Default cap on the number of contracts for 2^|C| subset enumerations.
inline constexpr std::size_t kDefaultSystemCap = 20;

struct S0Violation {
    AgentId agent;
    Menu expected; // what the agent would actually choose from S(i)
    bool operator==(const S0Violation&) const = default;
};

struct IndividualRationality {
    bool rational = true;
    std::vector<S0Violation> violations;
};

/// S0: f_i(S(i)) = S(i) for every agent.
IndividualRationality is_individually_rational(const Instance& instance, const ContractSystem& system);

/// Least-id contract b outside S with b ∈ f_i(S(i) ∪ {b}) for every
/// participant i, if any.
std::optional<ContractId> find_blocking(const Instance& instance, const ContractSystem& system);

struct StabilityVerdict {
    bool stable = false;
    std::vector<S0Violation> s0_violations;
    std::optional<ContractId> blocking;
};

StabilityVerdict is_stable(const Instance& instance, const ContractSystem& system);

/// All stable systems, enumerated by increasing size then lexicographically.
std::vector<ContractSystem> enumerate_stable(const Instance& instance,
                                             std::size_t cap = kDefaultSystemCap);

/// With S stable and T individually rational: if S(i) ⪯_i T(i) under the
/// Blair hyper-relation for every agent, then S = T. Returns the truth value
/// of that implication.
bool check_blair_rigidity(const Instance& instance,
                          const ContractSystem& stable_system,
                          const ContractSystem& other);

/// Least set B ⊆ C∖S (by size then lexicographic order) with every member
/// chosen by all of its participants from S(i) ∪ B(i), if any.
std::optional<ContractSystem> find_blocking_set(const Instance& instance,
                                                const ContractSystem& system,
                                                std::size_t cap = kDefaultSystemCap);

} // namespace cnets

#endif
