#ifndef CNETS_BRUTEFORCE_HPP
#define CNETS_BRUTEFORCE_HPP

#include <cstdint>
#include <vector>

#include "cnets/metastable.hpp"
#include "cnets/stability.hpp"

namespace cnets {

/// Seeded random-instance recipe. The same seed always yields the same
/// instance, byte for byte.
struct GeneratorConfig {
    std::uint64_t seed = 1;
    int min_agents = 2;
    int max_agents = 4;
    int min_contracts = 0;
    int max_contracts = 7;
    int max_participants = 3;
    double linear_weight = 0.4;
    double weak_weight = 0.3;
    double quota_weight = 0.15;
    double union_weight = 0.15;
    bool ensure_autarkic = true;
};

/// All meta-stable systems by 2^|C| scan. The domination predicate here is
/// written against the definition directly and shares nothing with the
/// metastable module beyond choice evaluation.
std::vector<ContractSystem> enumerate_metastable(const Instance& instance,
                                                 std::size_t cap = kDefaultSystemCap);

/// All grid vectors satisfying both compromise properties, in the same
/// descending lexicographic order find_compromise scans.
std::vector<CompromiseVector> enumerate_compromises(const Instance& instance,
                                                    std::size_t grid_cap = std::size_t{1} << 22);

/// Deterministic pseudo-random valid instance.
Instance generate(const GeneratorConfig& config);

} // namespace cnets

#endif
