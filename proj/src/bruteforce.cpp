#include "cnets/bruteforce.hpp"

#include <algorithm>
#include <random>

#include "cnets/compiled.hpp"
#include "cnets/errors.hpp"

namespace cnets {

std::vector<ContractSystem> enumerate_metastable(const Instance& instance, std::size_t cap) {
    if (instance.contracts.size() > cap)
        throw ResourceError("instance has more contracts than the enumeration cap");
    const CompiledInstance ci = CompiledInstance::build(instance, std::max(cap, kDefaultGroundCap));
    const int m = static_cast<int>(ci.contract_ids.size());

    // Domination scan written against the definition, independent of the
    // metastable module: d dominates S when every participant of d either
    // holds nothing or holds something losing the pairwise choice against d.
    auto dominated = [&](std::uint32_t system) {
        for (int d = 0; d < m; ++d) {
            bool every_participant = true;
            for (int a : ci.participants[static_cast<std::size_t>(d)]) {
                const auto& agent = ci.agents[static_cast<std::size_t>(a)];
                const std::uint32_t held = agent.local_mask(system);
                if (held == 0) continue;
                const std::uint32_t dbit = agent.local_bit(d);
                bool someone_loses = false;
                for (std::uint32_t rest = held; rest != 0; rest &= rest - 1) {
                    const std::uint32_t abit = rest & (~rest + 1);
                    if ((agent.choice_table[abit | dbit] & abit) == 0) {
                        someone_loses = true;
                        break;
                    }
                }
                if (!someone_loses) {
                    every_participant = false;
                    break;
                }
            }
            if (every_participant) return true;
        }
        return false;
    };

    std::vector<ContractSystem> out;
    for_each_subset_canonical(m, [&](std::uint32_t mask) {
        if (!dominated(mask)) out.push_back(ci.system_of(mask));
    });
    return out;
}

std::vector<CompromiseVector> enumerate_compromises(const Instance& instance,
                                                    std::size_t grid_cap) {
    std::map<AgentId, std::map<ContractId, long long>> utils;
    for (const auto& agent : instance.agents) {
        const ChoiceSpec& spec = instance.spec_of(agent);
        if (!std::holds_alternative<LinearSpec>(spec))
            throw PreconditionError("enumerate_compromises requires linear equipment");
        utils[agent] = utility_levels(spec);
        bool autarkic = false;
        for (const auto& id : instance.contracts_of(agent))
            if (instance.contract_at(id).autarkic()) autarkic = true;
        if (!autarkic)
            throw PreconditionError("agent '" + agent + "' owns no autarkic contract");
    }

    std::vector<std::vector<long long>> grid;
    std::size_t cells = 1;
    for (const auto& agent : instance.agents) {
        std::vector<long long> levels;
        for (const auto& [id, level] : utils.at(agent)) levels.push_back(level);
        std::sort(levels.begin(), levels.end(), std::greater<>());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        if (cells > grid_cap / std::max<std::size_t>(levels.size(), 1))
            throw ResourceError("compromise grid exceeds the enumeration cap");
        cells *= levels.size();
        grid.push_back(std::move(levels));
    }

    auto valid = [&](const std::map<AgentId, long long>& x) {
        for (const auto& contract : instance.contracts) {
            bool somewhere_leq = false;
            for (const auto& agent : contract.participants)
                if (utils.at(agent).at(contract.id) <= x.at(agent)) {
                    somewhere_leq = true;
                    break;
                }
            if (!somewhere_leq) return false;
        }
        for (const auto& agent : instance.agents) {
            bool justified = false;
            for (const auto& id : instance.contracts_of(agent)) {
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
    };

    std::vector<CompromiseVector> out;
    std::vector<std::size_t> pick(instance.agents.size(), 0);
    while (true) {
        std::map<AgentId, long long> x;
        for (std::size_t i = 0; i < instance.agents.size(); ++i)
            x[instance.agents[i]] = grid[i][pick[i]];
        if (valid(x)) out.push_back({std::move(x)});

        std::size_t i = instance.agents.size();
        bool done = false;
        while (i > 0) {
            --i;
            if (++pick[i] < grid[i].size()) break;
            pick[i] = 0;
            if (i == 0) done = true;
        }
        if (done || instance.agents.empty()) break;
    }
    return out;
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    int between(int lo, int hi) { // inclusive
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool coin() { return (engine_() & 1u) != 0; }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(engine_() % i)]);
    }

private:
    std::mt19937_64 engine_;
};

LinearSpec random_order(Rng& rng, std::vector<ContractId> ids) {
    rng.shuffle(ids);
    return {std::move(ids)};
}

} // namespace

Instance generate(const GeneratorConfig& config) {
    if (config.min_agents < 1 || config.min_agents > config.max_agents || config.max_agents > 9)
        throw InputError("agent count range must satisfy 1 <= min <= max <= 9");
    if (config.min_contracts < 0 || config.min_contracts > config.max_contracts ||
        config.max_contracts > 20)
        throw InputError("contract count range must satisfy 0 <= min <= max <= 20");
    if (config.max_participants < 1) throw InputError("max_participants must be at least 1");
    if (config.ensure_autarkic && config.max_agents > config.max_contracts)
        throw InputError("autarkic guarantee needs at least one contract per agent");
    const double total_weight = config.linear_weight + config.weak_weight + config.quota_weight +
                                config.union_weight;
    if (config.linear_weight < 0 || config.weak_weight < 0 || config.quota_weight < 0 ||
        config.union_weight < 0 || total_weight <= 0)
        throw InputError("equipment mix weights must be nonnegative and not all zero");

    Rng rng(config.seed);
    const int n_agents = rng.between(config.min_agents, config.max_agents);
    const int low = std::max(config.min_contracts, config.ensure_autarkic ? n_agents : 0);
    const int n_contracts = rng.between(std::min(low, config.max_contracts), config.max_contracts);

    Instance out;
    for (int i = 1; i <= n_agents; ++i) out.agents.push_back("a" + std::to_string(i));

    for (int c = 1; c <= n_contracts; ++c) {
        Contract contract;
        contract.id = (c < 10 ? "c0" : "c") + std::to_string(c);
        if (config.ensure_autarkic && c <= n_agents) {
            contract.participants = {out.agents[static_cast<std::size_t>(c - 1)]};
        } else {
            const int size = rng.between(1, std::min(config.max_participants, n_agents));
            std::vector<AgentId> pool = out.agents;
            rng.shuffle(pool);
            contract.participants.assign(pool.begin(), pool.begin() + size);
            std::sort(contract.participants.begin(), contract.participants.end());
        }
        out.contracts.push_back(std::move(contract));
    }
    out.normalize();

    for (const auto& agent : out.agents) {
        const auto own = out.contracts_of(agent);
        const double roll = rng.unit() * total_weight;
        ChoiceSpec spec;
        if (own.empty() || roll < config.linear_weight) {
            spec = random_order(rng, own);
        } else if (roll < config.linear_weight + config.weak_weight) {
            auto shuffled = own;
            rng.shuffle(shuffled);
            WeakSpec weak;
            for (const auto& id : shuffled) {
                if (weak.tiers.empty() || rng.coin()) weak.tiers.push_back({});
                weak.tiers.back().push_back(id);
            }
            for (auto& tier : weak.tiers) std::sort(tier.begin(), tier.end());
            spec = std::move(weak);
        } else if (roll < config.linear_weight + config.weak_weight + config.quota_weight) {
            auto order = random_order(rng, own);
            const int quota = rng.between(1, static_cast<int>(own.size()));
            spec = QuotaSpec{std::move(order.ranking), quota};
        } else {
            UnionSpec uni;
            const int parts = rng.between(1, 3);
            for (int k = 0; k < parts; ++k) uni.parts.push_back(random_order(rng, own));
            spec = std::move(uni);
        }
        out.equipment.emplace(agent, std::move(spec));
    }

    if (!validate(out).empty()) throw InternalError("generator produced an invalid instance");
    return out;
}

} // namespace cnets
