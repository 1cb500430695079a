#include "doctest.h"

#include <algorithm>

#include "cnets/bruteforce.hpp"
#include "cnets/compiled.hpp"
#include "cnets/errors.hpp"
#include "cnets/io.hpp"
#include "fixtures.hpp"

using namespace cnets;

TEST_CASE("enumerate_metastable on cyc3") {
    const auto all = enumerate_metastable(fixtures::cyc3());
    const std::set<ContractSystem> lookup(all.begin(), all.end());
    CHECK(lookup.count({"c12", "c23"}));
    CHECK(lookup.count({"c23", "c31"}));
    CHECK(lookup.count({"c12", "c31"}));
    CHECK(lookup.count({"c12", "c23", "c31"}));
    CHECK_FALSE(lookup.count({}));

    const auto lone = enumerate_metastable(fixtures::single_autarkic());
    REQUIRE(lone.size() == 1);
    CHECK(lone[0] == ContractSystem{"a"});

    const auto marr = enumerate_metastable(fixtures::marr());
    CHECK_FALSE(marr.empty());
    CHECK(std::find(marr.begin(), marr.end(), ContractSystem{"m1w1", "m2w2"}) != marr.end());
}

TEST_CASE("oracle agrees with is_metastable subset by subset") {
    GeneratorConfig config;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        config.seed = seed;
        const Instance instance = generate(config);
        const auto all = enumerate_metastable(instance);
        const std::set<ContractSystem> lookup(all.begin(), all.end());
        const CompiledInstance ci = CompiledInstance::build(instance);
        for_each_subset_canonical(static_cast<int>(instance.contracts.size()),
                                  [&](std::uint32_t mask) {
                                      const ContractSystem system = ci.system_of(mask);
                                      CHECK(is_metastable(instance, system).metastable ==
                                            (lookup.count(system) > 0));
                                  });
    }
}

TEST_CASE("enumerate_compromises") {
    const auto cyc3 = enumerate_compromises(fixtures::cyc3());
    const CompromiseVector expected{{{"1", 2}, {"2", 1}, {"3", 1}}};
    CHECK(std::find(cyc3.begin(), cyc3.end(), expected) != cyc3.end());
    REQUIRE_FALSE(cyc3.empty());
    CHECK(cyc3.front() == find_compromise(fixtures::cyc3()));

    const auto lone = enumerate_compromises(fixtures::single_autarkic());
    REQUIRE(lone.size() == 1);
    CHECK(lone[0].values == std::map<AgentId, long long>{{"1", 0}});

    const auto mutual = enumerate_compromises(fixtures::two_agent_mutual());
    const CompromiseVector top{{{"1", 1}, {"2", 1}}};
    CHECK(std::find(mutual.begin(), mutual.end(), top) != mutual.end());

    CHECK_THROWS_AS(enumerate_compromises(fixtures::split2()), PreconditionError);
}

TEST_CASE("every enumerated compromise is valid and find_compromise is among them") {
    GeneratorConfig config;
    config.linear_weight = 1;
    config.weak_weight = 0;
    config.quota_weight = 0;
    config.union_weight = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        config.seed = seed;
        const Instance instance = generate(config);
        const auto all = enumerate_compromises(instance);
        REQUIRE_FALSE(all.empty());
        for (const auto& x : all) CHECK(is_valid_compromise(instance, x));
        CHECK(std::find(all.begin(), all.end(), find_compromise(instance)) != all.end());
    }
}

// Any real-valued compromise collapses onto the utility grid: replacing each
// value by the worst utility of the contracts it admits for that agent keeps
// both properties and the threshold system. Tested on a refined grid that
// also carries the in-between and below-minimum levels.
TEST_CASE("off-grid compromises collapse onto the grid") {
    GeneratorConfig config;
    config.linear_weight = 1;
    config.weak_weight = 0;
    config.quota_weight = 0;
    config.union_weight = 0;
    config.max_agents = 3;
    config.max_contracts = 5;

    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        config.seed = seed;
        const Instance instance = generate(config);

        // doubled utilities: even = grid levels, odd = strictly between
        std::map<AgentId, std::map<ContractId, long long>> doubled;
        std::vector<std::vector<long long>> refined;
        for (const auto& agent : instance.agents) {
            auto levels = utility_levels(instance.spec_of(agent));
            std::set<long long> values;
            for (auto& [id, level] : levels) {
                doubled[agent][id] = 2 * level;
                values.insert(2 * level);
                values.insert(2 * level + 1);
                values.insert(2 * level - 1);
            }
            refined.push_back({values.begin(), values.end()});
        }

        std::vector<std::size_t> pick(instance.agents.size(), 0);
        while (true) {
            std::map<AgentId, long long> x;
            for (std::size_t i = 0; i < instance.agents.size(); ++i)
                x[instance.agents[i]] = refined[i][pick[i]];

            auto admits = [&](const Contract& c) {
                for (const auto& agent : c.participants)
                    if (doubled.at(agent).at(c.id) < x.at(agent)) return false;
                return true;
            };
            bool prop1 = true;
            for (const auto& c : instance.contracts) {
                bool somewhere_leq = false;
                for (const auto& agent : c.participants)
                    somewhere_leq = somewhere_leq || doubled.at(agent).at(c.id) <= x.at(agent);
                prop1 = prop1 && somewhere_leq;
            }
            bool prop2 = true;
            for (const auto& agent : instance.agents) {
                bool justified = false;
                for (const auto& id : instance.contracts_of(agent))
                    justified = justified || admits(instance.contract_at(id));
                prop2 = prop2 && justified;
            }

            if (prop1 && prop2) {
                // collapse: x'(i) = worst admitted utility at i
                CompromiseVector collapsed;
                ContractSystem system;
                for (const auto& c : instance.contracts)
                    if (admits(c)) system.insert(c.id);
                for (const auto& agent : instance.agents) {
                    long long worst = 0;
                    bool first = true;
                    for (const auto& id : restrict_system(instance, system, agent)) {
                        const long long u = utility_levels(instance.spec_of(agent)).at(id);
                        if (first || u < worst) worst = u;
                        first = false;
                    }
                    REQUIRE_FALSE(first); // property 2 keeps S(i) nonempty
                    collapsed.values[agent] = worst;
                }
                CHECK(is_valid_compromise(instance, collapsed));
                CHECK(system_from_compromise(instance, collapsed) == system);
            }

            std::size_t i = instance.agents.size();
            bool done = false;
            while (i > 0) {
                --i;
                if (++pick[i] < refined[i].size()) break;
                pick[i] = 0;
                if (i == 0) done = true;
            }
            if (done) break;
        }
    }
}

TEST_CASE("every generated spec is path independent") {
    GeneratorConfig config;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        config.seed = seed;
        const Instance instance = generate(config);
        for (const auto& [agent, spec] : instance.equipment)
            CHECK(is_path_independent(spec).holds);
    }
}

TEST_CASE("generator is deterministic and always valid") {
    GeneratorConfig config;
    config.seed = 1;
    const Instance first = generate(config);
    CHECK(validate(first).empty());
    const Instance second = generate(config);
    CHECK(io::instance_to_json(first).dump() == io::instance_to_json(second).dump());

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        config.seed = seed;
        CHECK(validate(generate(config)).empty());
    }
}

TEST_CASE("generator rejects infeasible configurations") {
    GeneratorConfig config;
    config.max_contracts = 2;
    config.max_agents = 4;
    config.ensure_autarkic = true;
    CHECK_THROWS_AS(generate(config), InputError);

    GeneratorConfig weights;
    weights.linear_weight = 0;
    weights.weak_weight = 0;
    weights.quota_weight = 0;
    weights.union_weight = 0;
    CHECK_THROWS_AS(generate(weights), InputError);
}

TEST_CASE("meta-stable systems exist for every autarkic-guaranteed instance") {
    GeneratorConfig config;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        config.seed = seed;
        CHECK_FALSE(enumerate_metastable(generate(config)).empty());
    }
}
