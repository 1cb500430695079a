// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Everything runs at desk scale against the exhaustive oracles.

#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "cnets/bruteforce.hpp"
#include "cnets/cli.hpp"
#include "cnets/compiled.hpp"
#include "cnets/io.hpp"
#include "cnets/metastable.hpp"
#include "cnets/reduction.hpp"
#include "cnets/stability.hpp"
#include "fixtures.hpp"

using namespace cnets;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::vector<Instance> sweep_instances() {
    std::vector<Instance> out;
    GeneratorConfig config; // ≤4 agents, ≤7 contracts, mixed equipment, autarkic guaranteed
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        config.seed = seed;
        out.push_back(generate(config));
    }
    return out;
}

// 1. The three-agent cycle: no stable system, the two-contract chain is
//    meta-stable, and the constructed system passes the oracle. Exact.
void criterion1() {
    const std::string path = "/tmp/cnets_acceptance_cyc3.json";
    {
        std::ofstream out(path);
        out << io::instance_to_json(fixtures::cyc3()).dump(2) << "\n";
    }

    bool ok = true;
    std::string detail;

    const auto enumerated = cli::run({"stable", "--enumerate", path});
    ok = ok && enumerated.exit_code == 0 && enumerated.report.at("count") == 0;

    const auto checked = cli::run({"metastable", "--check", "[\"c12\",\"c23\"]", path});
    ok = ok && checked.exit_code == 0 && checked.report.at("metastable") == true;

    const auto solved = cli::run({"metastable", "--solve", path});
    ok = ok && solved.exit_code == 0;
    if (ok) {
        const ContractSystem system = io::system_from_json(solved.report.at("system"));
        const auto oracle = enumerate_metastable(fixtures::cyc3());
        ok = std::find(oracle.begin(), oracle.end(), system) != oracle.end();
        detail = "0 stable systems; {c12,c23} meta-stable; solver output in oracle";
    } else {
        detail = "cli run failed";
    }
    report(1, "cyc3 reproduction", ok, detail);
}

// 2. A meta-stable system is constructed for every seeded instance and the
//    independent oracle confirms it.
void criterion2(const std::vector<Instance>& instances) {
    int good = 0;
    for (const auto& instance : instances) {
        try {
            const ContractSystem system = solve_metastable(instance);
            const auto oracle = enumerate_metastable(instance);
            if (std::find(oracle.begin(), oracle.end(), system) != oracle.end()) ++good;
        } catch (...) {
        }
    }
    report(2, "meta-stable existence sweep", good == static_cast<int>(instances.size()),
           std::to_string(good) + "/" + std::to_string(instances.size()));
}

// 3. Every stable system of the sweep is meta-stable.
void criterion3(const std::vector<Instance>& instances) {
    int checked = 0, good = 0;
    for (const auto& instance : instances) {
        for (const auto& system : enumerate_stable(instance)) {
            ++checked;
            if (is_metastable(instance, system).metastable) ++good;
        }
    }
    report(3, "stable systems are meta-stable", good == checked,
           std::to_string(good) + "/" + std::to_string(checked) + " stable systems");
}

// 4. Splitting one union-of-two-linears agent preserves the stable family:
//    projections of reduced stable systems give exactly the original family,
//    and lifting then projecting is the identity.
void criterion4() {
    int good = 0;
    const int total = 200;
    for (std::uint64_t seed = 1; seed <= total; ++seed) {
        const Instance instance = fixtures::with_union_agent(seed);
        const auto [reduced, map] = reduce_to_weak_orders(instance);

        const auto original = enumerate_stable(instance);
        const auto lifted_side = enumerate_stable(reduced);

        std::set<ContractSystem> image;
        bool all_stable = true;
        for (const auto& s : lifted_side) {
            const auto projected = project_system(map, s);
            all_stable = all_stable && is_stable(instance, projected).stable;
            image.insert(projected);
        }
        bool round_trip = image == std::set<ContractSystem>(original.begin(), original.end());
        for (const auto& s : original) {
            const auto lifted = lift_through(instance, map, s);
            round_trip = round_trip && is_stable(reduced, lifted).stable &&
                         project_system(map, lifted) == s;
        }
        if (all_stable && round_trip) ++good;
    }
    report(4, "reduction round-trip", good == total,
           std::to_string(good) + "/" + std::to_string(total));
}

// 5. Decompositions reproduce union-built tables on every menu, and
//    heredity+outcast is exactly path independence on arbitrary tables.
void criterion5() {
    std::mt19937_64 rng(0x5eed);
    const std::vector<ContractId> ground{"a", "b", "c", "d", "e"};

    int decompose_good = 0;
    const int total = 200;
    for (int round = 0; round < total; ++round) {
        UnionSpec uni;
        const int parts = 1 + static_cast<int>(rng() % 3);
        for (int p = 0; p < parts; ++p) {
            auto order = ground;
            for (std::size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[rng() % i]);
            uni.parts.push_back({order});
        }
        const TableSpec table = tabulate(uni);
        const auto orders = am_decompose(table);
        bool equal = true;
        for (std::uint32_t m = 0; m < table.choices.size() && equal; ++m) {
            const Menu menu = menu_of(table.ground, m);
            Menu reunion;
            for (const auto& order : orders) {
                const Menu top = choose(order, menu);
                reunion.insert(top.begin(), top.end());
            }
            equal = reunion == choose(table, menu);
        }
        if (equal) ++decompose_good;
    }

    int equivalence_good = 0;
    for (int round = 0; round < total; ++round) {
        TableSpec t;
        t.ground = ground;
        t.choices.resize(32);
        for (std::uint32_t m = 1; m < 32; ++m)
            t.choices[m] = static_cast<std::uint32_t>(rng()) & m;
        const bool pi = is_path_independent(t).holds;
        const bool ho = check_heredity(t).holds && check_outcast(t).holds;
        if (pi == ho) ++equivalence_good;
    }

    report(5, "decomposition and the heredity/outcast equivalence",
           decompose_good == total && equivalence_good == total,
           std::to_string(decompose_good) + "/200 unions, " + std::to_string(equivalence_good) +
               "/200 tables");
}

// 6. The compromise found after linearization and augmentation satisfies
//    both defining properties, shows up in the oracle enumeration, and its
//    threshold system is meta-stable with nothing left empty-handed.
void criterion6(const std::vector<Instance>& instances) {
    int good = 0;
    for (const auto& instance : instances) {
        try {
            const Instance augmented = augment_autarkic(linearize_equipment(instance));
            const CompromiseVector x = find_compromise(augmented);

            // direct property check, written out against the definitions
            bool prop1 = true;
            for (const auto& contract : augmented.contracts) {
                bool somewhere = false;
                for (const auto& agent : contract.participants)
                    somewhere = somewhere ||
                                utility_levels(augmented.spec_of(agent)).at(contract.id) <=
                                    x.values.at(agent);
                prop1 = prop1 && somewhere;
            }
            bool prop2 = true;
            for (const auto& agent : augmented.agents) {
                bool justified = false;
                for (const auto& id : augmented.contracts_of(agent)) {
                    bool everywhere = true;
                    for (const auto& other : augmented.contract_at(id).participants)
                        everywhere = everywhere &&
                                     x.values.at(other) <=
                                         utility_levels(augmented.spec_of(other)).at(id);
                    justified = justified || everywhere;
                }
                prop2 = prop2 && justified;
            }

            const auto all = enumerate_compromises(augmented);
            const bool listed = std::find(all.begin(), all.end(), x) != all.end();

            const ContractSystem system = system_from_compromise(augmented, x);
            bool nonempty = true;
            for (const auto& agent : augmented.agents)
                nonempty = nonempty && !restrict_system(augmented, system, agent).empty();
            const bool meta = is_metastable(augmented, system).metastable;

            if (prop1 && prop2 && listed && nonempty && meta) ++good;
        } catch (...) {
        }
    }
    report(6, "compromise correctness", good == static_cast<int>(instances.size()),
           std::to_string(good) + "/" + std::to_string(instances.size()));
}

// 7. Minimality: the monogamous-participant criterion matches the
//    proper-subset scan; stable systems under linear equipment are minimal;
//    tie perturbation keeps minimal systems meta-stable; binary linear
//    networks split into isolated vertices and stars.
void criterion7(const std::vector<Instance>& instances) {
    bool ok = true;
    std::string detail;

    int scanned = 0;
    for (const auto& instance : instances) {
        const auto all = enumerate_metastable(instance);
        const std::set<ContractSystem> lookup(all.begin(), all.end());
        const CompiledInstance ci = CompiledInstance::build(instance);
        for (const auto& system : all) {
            ++scanned;
            bool has_smaller = false;
            const std::uint32_t mask = ci.mask_of_system(system);
            if (mask != 0) {
                for (std::uint32_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
                    if (lookup.count(ci.system_of(sub))) {
                        has_smaller = true;
                        break;
                    }
                    if (sub == 0) break;
                }
            }
            if (is_minimal_metastable(instance, system) != !has_smaller) ok = false;
        }
    }
    detail += std::to_string(scanned) + " minimality scans";

    GeneratorConfig linear_config;
    linear_config.linear_weight = 1;
    linear_config.weak_weight = 0;
    linear_config.quota_weight = 0;
    linear_config.union_weight = 0;
    int stable_minimal = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        linear_config.seed = seed;
        const Instance instance = generate(linear_config);
        for (const auto& system : enumerate_stable(instance)) {
            ++stable_minimal;
            if (!is_minimal_metastable(instance, system)) ok = false;
        }
    }
    detail += ", " + std::to_string(stable_minimal) + " stable-minimal checks";

    GeneratorConfig weak_config;
    weak_config.linear_weight = 0.4;
    weak_config.weak_weight = 0.6;
    weak_config.quota_weight = 0;
    weak_config.union_weight = 0;
    int perturbed_count = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        weak_config.seed = seed;
        const Instance instance = generate(weak_config);
        for (const auto& system : enumerate_metastable(instance)) {
            if (!is_minimal_metastable(instance, system)) continue;
            ++perturbed_count;
            const auto perturbed = perturb_ties(instance, system);
            if (!is_metastable(perturbed.instance, system).metastable) ok = false;
        }
    }
    detail += ", " + std::to_string(perturbed_count) + " perturbations";

    GeneratorConfig binary_config = linear_config;
    binary_config.max_participants = 2;
    int classified = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        binary_config.seed = seed;
        const Instance instance = generate(binary_config);
        for (const auto& system : enumerate_metastable(instance)) {
            if (!is_minimal_metastable(instance, system)) continue;
            for (const auto& component : classify_components(instance, system)) {
                ++classified;
                if (component.kind == ComponentKind::Other) ok = false;
            }
        }
    }
    detail += ", " + std::to_string(classified) + " components";

    report(7, "minimal meta-stability suite", ok, detail);
}

// 8. Blair rigidity never falsified, and a single blocking contract exists
//    exactly when a blocking set does (on individually rational systems).
void criterion8(const std::vector<Instance>& instances) {
    bool ok = true;
    long rigidity_checks = 0, equivalence_checks = 0;
    for (const auto& instance : instances) {
        const auto stable_sets = enumerate_stable(instance);
        const CompiledInstance ci = CompiledInstance::build(instance);
        for_each_subset_canonical(
            static_cast<int>(instance.contracts.size()), [&](std::uint32_t mask) {
                const ContractSystem system = ci.system_of(mask);
                if (!is_individually_rational(instance, system).rational) return;
                for (const auto& s : stable_sets) {
                    ++rigidity_checks;
                    if (!check_blair_rigidity(instance, s, system)) ok = false;
                }
                ++equivalence_checks;
                const bool single = find_blocking(instance, system).has_value();
                const bool setwise = find_blocking_set(instance, system).has_value();
                if (single != setwise) ok = false;
            });
    }
    report(8, "rigidity and setwise blocking equivalence", ok,
           std::to_string(rigidity_checks) + " rigidity + " +
               std::to_string(equivalence_checks) + " equivalence checks");
}

} // namespace

int main() {
    const std::vector<Instance> instances = sweep_instances();
    criterion1();
    criterion2(instances);
    criterion3(instances);
    criterion4();
    criterion5();
    criterion6(instances);
    criterion7(instances);
    criterion8(instances);
    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
