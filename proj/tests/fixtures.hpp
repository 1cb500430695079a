#ifndef CNETS_TESTS_FIXTURES_HPP
#define CNETS_TESTS_FIXTURES_HPP

#include <algorithm>
#include <functional>
#include <random>

#include "cnets/bruteforce.hpp"
#include "cnets/core.hpp"

namespace cnets::fixtures {

// Three agents on a preference cycle: agent i ranks its autarkic contract
// below the contract with agent i-1, which sits below the one with agent
// i+1 (indices mod 3). No stable system exists here.
inline Instance cyc3() {
    Instance out;
    out.agents = {"1", "2", "3"};
    out.contracts = {
        {"a1", {"1"}}, {"a2", {"2"}}, {"a3", {"3"}},
        {"c12", {"1", "2"}}, {"c23", {"2", "3"}}, {"c31", {"1", "3"}},
    };
    out.equipment.emplace("1", LinearSpec{{"c12", "c31", "a1"}});
    out.equipment.emplace("2", LinearSpec{{"c23", "c12", "a2"}});
    out.equipment.emplace("3", LinearSpec{{"c31", "c23", "a3"}});
    out.normalize();
    return out;
}

// 2x2 marriage market; everyone prefers the partner with the matching index.
inline Instance marr() {
    Instance out;
    out.agents = {"m1", "m2", "w1", "w2"};
    out.contracts = {
        {"m1w1", {"m1", "w1"}}, {"m1w2", {"m1", "w2"}},
        {"m2w1", {"m2", "w1"}}, {"m2w2", {"m2", "w2"}},
    };
    out.equipment.emplace("m1", LinearSpec{{"m1w1", "m1w2"}});
    out.equipment.emplace("m2", LinearSpec{{"m2w2", "m2w1"}});
    out.equipment.emplace("w1", LinearSpec{{"m1w1", "m2w1"}});
    out.equipment.emplace("w2", LinearSpec{{"m2w2", "m1w2"}});
    out.normalize();
    return out;
}

// One union-equipped agent "0" sharing two contracts with a linear agent "j".
// The union of (c>d) and (d>c) equals the weak tie {c,d} on every menu.
inline Instance split2() {
    Instance out;
    out.agents = {"0", "j"};
    out.contracts = {{"c", {"0", "j"}}, {"d", {"0", "j"}}};
    out.equipment.emplace(
        "0", UnionSpec{{LinearSpec{{"c", "d"}}, LinearSpec{{"d", "c"}}}});
    out.equipment.emplace("j", LinearSpec{{"c", "d"}});
    out.normalize();
    return out;
}

// Like split2 but with three contracts and opposed linear parts, so the
// union is not a weak order and the reduction has to split agent "0".
inline Instance union3() {
    Instance out;
    out.agents = {"0", "j"};
    out.contracts = {{"x", {"0", "j"}}, {"y", {"0", "j"}}, {"z", {"0", "j"}}};
    out.equipment.emplace(
        "0", UnionSpec{{LinearSpec{{"x", "y", "z"}}, LinearSpec{{"z", "y", "x"}}}});
    out.equipment.emplace("j", LinearSpec{{"x", "y", "z"}});
    out.normalize();
    return out;
}

inline Instance single_autarkic() {
    Instance out;
    out.agents = {"1"};
    out.contracts = {{"a", {"1"}}};
    out.equipment.emplace("1", LinearSpec{{"a"}});
    out.normalize();
    return out;
}

// Two agents with autarkic fallbacks and one mutual contract on top.
inline Instance two_agent_mutual() {
    Instance out;
    out.agents = {"1", "2"};
    out.contracts = {{"a1", {"1"}}, {"a2", {"2"}}, {"c", {"1", "2"}}};
    out.equipment.emplace("1", LinearSpec{{"c", "a1"}});
    out.equipment.emplace("2", LinearSpec{{"c", "a2"}});
    out.normalize();
    return out;
}

// Build an explicit table from a rule.
inline TableSpec table_from(std::vector<ContractId> ground,
                            const std::function<Menu(const Menu&)>& rule) {
    std::sort(ground.begin(), ground.end());
    TableSpec out;
    out.ground = ground;
    out.choices.resize(std::size_t{1} << ground.size());
    for (std::uint32_t m = 0; m < out.choices.size(); ++m)
        out.choices[m] = mask_of(ground, rule(menu_of(ground, m)));
    return out;
}

// All-linear seeded instance with one agent rewired to a union of two
// random linear orders over its contracts.
inline Instance with_union_agent(std::uint64_t seed) {
    GeneratorConfig config;
    config.seed = seed;
    config.linear_weight = 1;
    config.weak_weight = 0;
    config.quota_weight = 0;
    config.union_weight = 0;
    Instance instance = generate(config);

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    AgentId chosen = instance.agents.front();
    for (const auto& agent : instance.agents)
        if (instance.contracts_of(agent).size() >= 2) {
            chosen = agent;
            break;
        }
    UnionSpec uni;
    for (int part = 0; part < 2; ++part) {
        auto order = instance.contracts_of(chosen);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng() % i]);
        uni.parts.push_back({order});
    }
    instance.equipment.at(chosen) = uni;
    return instance;
}

// Two agents, two shared contracts, everyone indifferent: f(A) = A.
inline Instance indifferent2() {
    Instance out;
    out.agents = {"1", "2"};
    out.contracts = {{"c", {"1", "2"}}, {"d", {"1", "2"}}};
    const TableSpec identity = table_from({"c", "d"}, [](const Menu& m) { return m; });
    out.equipment.emplace("1", identity);
    out.equipment.emplace("2", identity);
    out.normalize();
    return out;
}

} // namespace cnets::fixtures

#endif
