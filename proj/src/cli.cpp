#include "cnets/cli.hpp"

#include <chrono>
#include <sstream>

#include "CLI11.hpp"

#include "cnets/bruteforce.hpp"
#include "cnets/errors.hpp"
#include "cnets/metastable.hpp"
#include "cnets/reduction.hpp"
#include "cnets/stability.hpp"

namespace cnets::cli {

namespace {

using io::json;

Instance load_valid_instance(const std::string& path) {
    Instance instance = io::load_instance(path);
    const auto violations = validate(instance);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "instance '" << path << "' is invalid:";
        for (const auto& v : violations) os << " [" << v.subject << "] " << v.rule << ";";
        throw InputError(os.str());
    }
    return instance;
}

json witness_to_json(const DominationWitness& w) {
    json per_agent = json::object();
    for (const auto& [agent, beaten] : w.per_agent) {
        if (beaten)
            per_agent[agent] = *beaten;
        else
            per_agent[agent] = nullptr;
    }
    return json{{"dominator", w.dominator}, {"per_agent", per_agent}};
}

json stability_to_json(const StabilityVerdict& v) {
    json s0 = json::array();
    for (const auto& violation : v.s0_violations)
        s0.push_back(json{{"agent", violation.agent},
                          {"expected", io::system_to_json({violation.expected.begin(),
                                                           violation.expected.end()})}});
    json out{{"stable", v.stable}, {"s0_violations", s0}};
    out["blocking"] = v.blocking ? json(*v.blocking) : json(nullptr);
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

} // namespace

RunResult run(const std::vector<std::string>& args) {
    CLI::App app{"contract networks on hypergraphs: stability and meta-stability toolkit"};
    app.name("cnets");
    app.require_subcommand(1);

    bool as_json = false;
    std::size_t cap = 0; // 0 = per-operation default
    app.add_flag("--json", as_json, "emit the full JSON report");
    app.add_option("--cap", cap, "override the exhaustive-scan cap");

    std::string instance_path, spec_path, system_arg, menu_arg, agent_arg;
    std::string out_instance, out_map, out_file;
    bool enumerate = false, solve = false, all = false, exclude_members = false;
    std::string check_arg, minimize_arg;
    GeneratorConfig gen;

    auto* validate_cmd = app.add_subcommand("validate", "check instance invariants");
    validate_cmd->add_option("instance", instance_path)->required();

    auto* choose_cmd = app.add_subcommand("choose", "evaluate one agent's choice on a menu");
    choose_cmd->add_option("instance", instance_path)->required();
    choose_cmd->add_option("--agent", agent_arg)->required();
    choose_cmd->add_option("--menu", menu_arg, "JSON array of contract ids, or a file")->required();

    auto* plott_cmd = app.add_subcommand("check-plott", "test path independence of a spec file");
    plott_cmd->add_option("spec", spec_path)->required();

    auto* decompose_cmd =
        app.add_subcommand("decompose", "decompose a spec file into linear orders");
    decompose_cmd->add_option("spec", spec_path)->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "split agents until all preferences are weak orders");
    reduce_cmd->add_option("instance", instance_path)->required();
    reduce_cmd->add_option("--out-instance", out_instance, "write the reduced instance here");
    reduce_cmd->add_option("--out-map", out_map, "write the split map here");

    auto* stable_cmd = app.add_subcommand("stable", "stability checks");
    stable_cmd->add_option("instance", instance_path)->required();
    stable_cmd->add_option("--check", check_arg, "system to test");
    stable_cmd->add_flag("--enumerate", enumerate, "list every stable system");

    auto* meta_cmd = app.add_subcommand("metastable", "meta-stability checks");
    meta_cmd->add_option("instance", instance_path)->required();
    meta_cmd->add_flag("--solve", solve, "construct a meta-stable system");
    meta_cmd->add_option("--check", check_arg, "system to test");
    meta_cmd->add_option("--minimize", minimize_arg, "meta-stable system to shrink");
    meta_cmd->add_flag("--exclude-members", exclude_members,
                       "only contracts outside the system may dominate");

    auto* compromise_cmd = app.add_subcommand("compromise", "find utility thresholds");
    compromise_cmd->add_option("instance", instance_path)->required();
    compromise_cmd->add_flag("--all", all, "enumerate every grid compromise");

    auto* minimize_cmd = app.add_subcommand("minimize", "shrink a meta-stable system");
    minimize_cmd->add_option("instance", instance_path)->required();
    minimize_cmd->add_option("--system", system_arg)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "independent exhaustive oracles");
    oracle_cmd->require_subcommand(1);
    auto* oracle_meta = oracle_cmd->add_subcommand("metastable", "enumerate meta-stable systems");
    oracle_meta->add_option("instance", instance_path)->required();
    auto* oracle_comp = oracle_cmd->add_subcommand("compromises", "enumerate grid compromises");
    oracle_comp->add_option("instance", instance_path)->required();

    auto* generate_cmd = app.add_subcommand("generate", "emit a seeded random instance");
    generate_cmd->add_option("--seed", gen.seed);
    generate_cmd->add_option("--min-agents", gen.min_agents);
    generate_cmd->add_option("--max-agents", gen.max_agents);
    generate_cmd->add_option("--min-contracts", gen.min_contracts);
    generate_cmd->add_option("--max-contracts", gen.max_contracts);
    generate_cmd->add_option("--max-participants", gen.max_participants);
    generate_cmd->add_option("-o,--out", out_file, "write the instance here");

    for (auto* sub : app.get_subcommands(/*filter=*/nullptr)) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands(/*filter=*/nullptr)) nested->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {0, json{{"help", app.help()}}, app.help()};
    } catch (const CLI::ParseError& e) {
        json report{{"error", std::string("argument error: ") + e.what()}, {"usage", app.help()}};
        return {2, report, std::string(e.what()) + "\n" + app.help()};
    }

    const std::size_t ground_cap = cap ? cap : kDefaultGroundCap;
    const std::size_t system_cap = cap ? cap : kDefaultSystemCap;

    Timer timer;
    json report;
    int exit_code = 0;
    std::ostringstream text;

    try {
        if (app.got_subcommand(validate_cmd)) {
            const Instance instance = io::load_instance(instance_path);
            const auto violations = validate(instance);
            report["command"] = "validate";
            report["instance"] = instance_path;
            json list = json::array();
            for (const auto& v : violations)
                list.push_back(json{{"subject", v.subject}, {"rule", v.rule}});
            report["violations"] = list;
            report["valid"] = violations.empty();
            if (violations.empty()) {
                text << "instance is valid\n";
            } else {
                exit_code = 2;
                for (const auto& v : violations)
                    text << "violation [" << v.subject << "]: " << v.rule << "\n";
            }
        } else if (app.got_subcommand(choose_cmd)) {
            const Instance instance = load_valid_instance(instance_path);
            const ContractSystem menu = io::parse_system_arg(menu_arg);
            const Menu chosen = choose(instance.spec_of(agent_arg), Menu(menu.begin(), menu.end()));
            report["command"] = "choose";
            report["agent"] = agent_arg;
            report["menu"] = io::system_to_json(menu);
            report["chosen"] = io::system_to_json({chosen.begin(), chosen.end()});
            text << "chosen:";
            for (const auto& id : chosen) text << " " << id;
            text << "\n";
        } else if (app.got_subcommand(plott_cmd)) {
            const ChoiceSpec spec = io::load_spec(spec_path);
            const auto pi = is_path_independent(spec, ground_cap);
            const auto heredity = check_heredity(spec, ground_cap);
            const auto outcast = check_outcast(spec, ground_cap);
            report["command"] = "check-plott";
            report["path_independent"] = pi.holds;
            report["heredity"] = heredity.holds;
            report["outcast"] = outcast.holds;
            if (pi.witness) {
                report["witness"] = json{
                    {"a", io::system_to_json({pi.witness->a.begin(), pi.witness->a.end()})},
                    {"b", io::system_to_json({pi.witness->b.begin(), pi.witness->b.end()})}};
            } else {
                report["witness"] = nullptr;
            }
            exit_code = pi.holds ? 0 : 1;
            text << (pi.holds ? "path independent\n" : "not path independent\n");
        } else if (app.got_subcommand(decompose_cmd)) {
            const ChoiceSpec spec = io::load_spec(spec_path);
            const auto orders = am_decompose(spec, ground_cap);
            report["command"] = "decompose";
            json list = json::array();
            for (const auto& order : orders) {
                json ranking = json::array();
                for (const auto& id : order.ranking) ranking.push_back(id);
                list.push_back(ranking);
            }
            report["orders"] = list;
            text << orders.size() << " linear orders\n";
        } else if (app.got_subcommand(reduce_cmd)) {
            const Instance instance = load_valid_instance(instance_path);
            auto [reduced, map] = reduce_to_weak_orders(instance, ground_cap);
            report["command"] = "reduce";
            report["steps"] = map.steps.size();
            report["reduced_instance"] = io::instance_to_json(reduced);
            report["split_map"] = io::split_map_to_json(map);
            if (!out_instance.empty()) io::write_json_file(out_instance, io::instance_to_json(reduced));
            if (!out_map.empty()) io::write_json_file(out_map, io::split_map_to_json(map));
            text << "reduced with " << map.steps.size() << " splits\n";
        } else if (app.got_subcommand(stable_cmd)) {
            const Instance instance = load_valid_instance(instance_path);
            report["command"] = "stable";
            if (enumerate) {
                const auto systems = enumerate_stable(instance, system_cap);
                report["mode"] = "enumerate";
                json list = json::array();
                for (const auto& s : systems) list.push_back(io::system_to_json(s));
                report["count"] = systems.size();
                report["systems"] = list;
                text << systems.size() << " stable systems\n";
            } else if (!check_arg.empty()) {
                const ContractSystem system = io::parse_system_arg(check_arg);
                const auto verdict = is_stable(instance, system);
                report["mode"] = "check";
                report["system"] = io::system_to_json(system);
                report["verdict"] = stability_to_json(verdict);
                exit_code = verdict.stable ? 0 : 1;
                text << (verdict.stable ? "stable\n" : "not stable\n");
            } else {
                throw InputError("stable needs --check or --enumerate");
            }
        } else if (app.got_subcommand(meta_cmd)) {
            const Instance instance = load_valid_instance(instance_path);
            report["command"] = "metastable";
            if (solve) {
                const auto system = solve_metastable(instance, ground_cap);
                report["mode"] = "solve";
                report["system"] = io::system_to_json(system);
                text << "meta-stable system:";
                for (const auto& id : system) text << " " << id;
                text << "\n";
            } else if (!check_arg.empty()) {
                const ContractSystem system = io::parse_system_arg(check_arg);
                const auto verdict =
                    is_metastable(instance, system, {.exclude_members = exclude_members});
                report["mode"] = "check";
                report["system"] = io::system_to_json(system);
                report["metastable"] = verdict.metastable;
                report["witness"] = verdict.witness ? witness_to_json(*verdict.witness) : json(nullptr);
                exit_code = verdict.metastable ? 0 : 1;
                text << (verdict.metastable ? "meta-stable\n" : "dominated\n");
            } else if (!minimize_arg.empty()) {
                const ContractSystem system = io::parse_system_arg(minimize_arg);
                const auto minimal = minimize_metastable(instance, system);
                report["mode"] = "minimize";
                report["system"] = io::system_to_json(minimal);
                text << "minimal meta-stable system:";
                for (const auto& id : minimal) text << " " << id;
                text << "\n";
            } else {
                throw InputError("metastable needs --solve, --check or --minimize");
            }
        } else if (app.got_subcommand(compromise_cmd)) {
            Instance instance = load_valid_instance(instance_path);
            report["command"] = "compromise";
            if (all) {
                const auto vectors = enumerate_compromises(instance);
                json list = json::array();
                for (const auto& x : vectors) list.push_back(io::compromise_to_json(x));
                report["count"] = vectors.size();
                report["compromises"] = list;
                text << vectors.size() << " compromises\n";
            } else {
                const auto x = find_compromise(instance);
                report["compromise"] = io::compromise_to_json(x);
                report["system"] = io::system_to_json(system_from_compromise(instance, x));
                text << "found a compromise\n";
            }
        } else if (app.got_subcommand(minimize_cmd)) {
            const Instance instance = load_valid_instance(instance_path);
            const ContractSystem system = io::parse_system_arg(system_arg);
            const auto minimal = minimize_metastable(instance, system);
            report["command"] = "minimize";
            report["system"] = io::system_to_json(minimal);
            text << "minimal meta-stable system:";
            for (const auto& id : minimal) text << " " << id;
            text << "\n";
        } else if (app.got_subcommand(oracle_cmd)) {
            const Instance instance = load_valid_instance(instance_path);
            report["command"] = "oracle";
            if (oracle_cmd->got_subcommand(oracle_meta)) {
                const auto systems = enumerate_metastable(instance, system_cap);
                report["mode"] = "metastable";
                json list = json::array();
                for (const auto& s : systems) list.push_back(io::system_to_json(s));
                report["count"] = systems.size();
                report["systems"] = list;
                text << systems.size() << " meta-stable systems\n";
            } else {
                const auto vectors = enumerate_compromises(instance);
                report["mode"] = "compromises";
                json list = json::array();
                for (const auto& x : vectors) list.push_back(io::compromise_to_json(x));
                report["count"] = vectors.size();
                report["compromises"] = list;
                text << vectors.size() << " compromises\n";
            }
        } else if (app.got_subcommand(generate_cmd)) {
            const Instance instance = generate(gen);
            report["command"] = "generate";
            report["seed"] = gen.seed;
            report["instance"] = io::instance_to_json(instance);
            if (!out_file.empty()) io::write_json_file(out_file, io::instance_to_json(instance));
            text << "generated " << instance.agents.size() << " agents, "
                 << instance.contracts.size() << " contracts\n";
        }
    } catch (const InputError& e) {
        return {2, json{{"error", e.what()}}, std::string("error: ") + e.what() + "\n"};
    } catch (const PreconditionError& e) {
        return {2, json{{"error", e.what()}}, std::string("error: ") + e.what() + "\n"};
    } catch (const ResourceError& e) {
        return {2, json{{"error", e.what()}}, std::string("error: ") + e.what() + "\n"};
    } catch (const InternalError& e) {
        return {2, json{{"error", std::string("internal error: ") + e.what()}},
                std::string("internal error: ") + e.what() + "\n"};
    }

    report["elapsed_ms"] = timer.ms();
    return {exit_code, report, text.str()};
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    const RunResult result = run(args);
    bool wants_json = false;
    for (const auto& a : args) wants_json = wants_json || a == "--json";
    if (wants_json)
        printf("%s\n", result.report.dump(2).c_str());
    else
        fputs(result.text.c_str(), stdout);
    return result.exit_code;
}

} // namespace cnets::cli
