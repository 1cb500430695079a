#include "cnets/stability.hpp"

#include <algorithm>

#include "cnets/compiled.hpp"
#include "cnets/errors.hpp"

namespace cnets {

IndividualRationality is_individually_rational(const Instance& instance,
                                               const ContractSystem& system) {
    IndividualRationality out;
    for (const auto& agent : instance.agents) {
        const Menu held = restrict_system(instance, system, agent);
        const Menu chosen = choose(instance.spec_of(agent), held);
        if (chosen != held) out.violations.push_back({agent, chosen});
    }
    out.rational = out.violations.empty();
    return out;
}

std::optional<ContractId> find_blocking(const Instance& instance, const ContractSystem& system) {
    for (const auto& contract : instance.contracts) {
        if (system.count(contract.id)) continue;
        bool blocks = true;
        for (const auto& agent : contract.participants) {
            Menu menu = restrict_system(instance, system, agent);
            menu.insert(contract.id);
            if (!choose(instance.spec_of(agent), menu).count(contract.id)) {
                blocks = false;
                break;
            }
        }
        if (blocks) return contract.id;
    }
    return std::nullopt;
}

StabilityVerdict is_stable(const Instance& instance, const ContractSystem& system) {
    StabilityVerdict out;
    out.s0_violations = is_individually_rational(instance, system).violations;
    out.blocking = find_blocking(instance, system);
    out.stable = out.s0_violations.empty() && !out.blocking.has_value();
    return out;
}

namespace {

bool stable_mask(const CompiledInstance& ci, std::uint32_t system) {
    for (const auto& agent : ci.agents) {
        const std::uint32_t held = agent.local_mask(system);
        if (agent.choice_table[held] != held) return false;
    }
    const int m = static_cast<int>(ci.contract_ids.size());
    for (int b = 0; b < m; ++b) {
        if (system & (std::uint32_t{1} << b)) continue;
        bool blocks = true;
        for (int a : ci.participants[static_cast<std::size_t>(b)]) {
            const auto& agent = ci.agents[static_cast<std::size_t>(a)];
            const std::uint32_t bit = agent.local_bit(b);
            const std::uint32_t held = agent.local_mask(system);
            if ((agent.choice_table[held | bit] & bit) == 0) {
                blocks = false;
                break;
            }
        }
        if (blocks) return false;
    }
    return true;
}

} // namespace

std::vector<ContractSystem> enumerate_stable(const Instance& instance, std::size_t cap) {
    if (instance.contracts.size() > cap)
        throw ResourceError("instance has more contracts than the enumeration cap");
    const CompiledInstance ci = CompiledInstance::build(instance, std::max(cap, kDefaultGroundCap));
    std::vector<ContractSystem> out;
    for_each_subset_canonical(static_cast<int>(ci.contract_ids.size()), [&](std::uint32_t mask) {
        if (stable_mask(ci, mask)) out.push_back(ci.system_of(mask));
    });
    return out;
}

bool check_blair_rigidity(const Instance& instance, const ContractSystem& stable_system,
                          const ContractSystem& other) {
    if (!is_stable(instance, stable_system).stable)
        throw InputError("check_blair_rigidity: the first system is not stable");
    if (!is_individually_rational(instance, other).rational)
        throw InputError("check_blair_rigidity: the second system is not individually rational");

    bool premise = true;
    for (const auto& agent : instance.agents) {
        const Menu s = restrict_system(instance, stable_system, agent);
        const Menu t = restrict_system(instance, other, agent);
        if (!blair_leq(instance.spec_of(agent), s, t)) {
            premise = false;
            break;
        }
    }
    return !premise || stable_system == other;
}

std::optional<ContractSystem> find_blocking_set(const Instance& instance,
                                                const ContractSystem& system, std::size_t cap) {
    if (instance.contracts.size() > cap)
        throw ResourceError("instance has more contracts than the enumeration cap");
    const CompiledInstance ci = CompiledInstance::build(instance, std::max(cap, kDefaultGroundCap));
    const std::uint32_t sys = ci.mask_of_system(system);

    std::vector<int> outside;
    for (std::size_t c = 0; c < ci.contract_ids.size(); ++c)
        if (!(sys & (std::uint32_t{1} << c))) outside.push_back(static_cast<int>(c));

    std::optional<ContractSystem> found;
    for_each_subset_canonical(static_cast<int>(outside.size()), [&](std::uint32_t pick) {
        if (found || pick == 0) return;
        std::uint32_t candidate = 0;
        for (std::size_t i = 0; i < outside.size(); ++i)
            if (pick & (std::uint32_t{1} << i))
                candidate |= std::uint32_t{1} << outside[i];
        // every member must be chosen by all its participants from S(i) ∪ B(i)
        for (std::size_t b = 0; b < ci.contract_ids.size(); ++b) {
            if (!(candidate & (std::uint32_t{1} << b))) continue;
            for (int a : ci.participants[b]) {
                const auto& agent = ci.agents[static_cast<std::size_t>(a)];
                const std::uint32_t menu = agent.local_mask(sys | candidate);
                if ((agent.choice_table[menu] & agent.local_bit(static_cast<int>(b))) == 0)
                    return;
            }
        }
        found = ci.system_of(candidate);
    });
    return found;
}

} // namespace cnets
