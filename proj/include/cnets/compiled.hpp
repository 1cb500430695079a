#ifndef CNETS_COMPILED_HPP
#define CNETS_COMPILED_HPP

#include <cstdint>
#include <vector>

#include "cnets/core.hpp"

namespace cnets {

/// Per-agent choice table over that agent's contracts, indexed by bitmasks
/// relative to the instance-wide sorted contract order. Backs the subset
/// enumerations, which would be far too slow on id sets.
struct CompiledAgent {
    AgentId id;
    std::vector<int> contract_indices;         // global indices, ascending
    std::vector<std::uint32_t> choice_table;   // local menu mask -> chosen mask

    /// Project an instance-wide system mask onto this agent's local ground.
    std::uint32_t local_mask(std::uint32_t system_mask) const;
    /// Local bit for a global contract index, or 0 when the agent is not a
    /// participant.
    std::uint32_t local_bit(int global_index) const;
};

struct CompiledInstance {
    const Instance* source = nullptr;
    std::vector<ContractId> contract_ids;              // sorted = index order
    std::vector<std::vector<int>> participants;        // contract -> agent indices
    std::vector<CompiledAgent> agents;

    static CompiledInstance build(const Instance& instance, std::size_t ground_cap = kDefaultGroundCap);

    int contract_index(const ContractId& id) const;    // -1 when absent
    int agent_index(const AgentId& id) const;          // -1 when absent

    ContractSystem system_of(std::uint32_t mask) const;
    std::uint32_t mask_of_system(const ContractSystem& system) const;
};

/// Visit every subset of {0,...,n-1} as a bitmask, ordered by increasing
/// popcount and lexicographically (by the sorted element sequence) within
/// one popcount.
template <typename Fn>
void for_each_subset_canonical(int n, Fn&& fn) {
    fn(std::uint32_t{0});
    for (int k = 1; k <= n; ++k) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::uint32_t mask = 0;
            for (int i : idx) mask |= std::uint32_t{1} << i;
            fn(mask);
            int i = k - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

} // namespace cnets

#endif
