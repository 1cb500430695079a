#include "cnets/choice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "cnets/errors.hpp"

namespace cnets {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<ContractId> sorted_unique(std::vector<ContractId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

void require_subset_of_ground(const ChoiceSpec& spec, const Menu& menu) {
    const auto ground = ground_of(spec);
    for (const auto& id : menu) {
        if (!std::binary_search(ground.begin(), ground.end(), id))
            throw InputError("menu element '" + id + "' is outside the ground set");
    }
}

std::size_t checked_ground_size(const std::vector<ContractId>& ground, std::size_t cap) {
    if (ground.size() > cap || ground.size() > 24) {
        std::ostringstream os;
        os << "ground set of size " << ground.size() << " exceeds the exhaustive-scan cap of "
           << std::min<std::size_t>(cap, 24);
        throw ResourceError(os.str());
    }
    return ground.size();
}

// Evaluators over bitmasks relative to a sorted ground set.
struct MaskEvaluator {
    std::vector<ContractId> ground;
    // ground indices in preference order (best first) for rank-based kinds
    std::vector<std::vector<int>> orders;
    std::vector<int> tier_of;  // weak: tier index per ground index
    int quota = 0;
    enum Kind { kLinear, kWeak, kQuota, kUnion, kTable } kind = kLinear;
    const TableSpec* table = nullptr;

    std::uint32_t eval(std::uint32_t menu) const {
        switch (kind) {
            case kLinear: {
                for (int g : orders[0])
                    if (menu & (std::uint32_t{1} << g)) return std::uint32_t{1} << g;
                return 0;
            }
            case kWeak: {
                int best = -1;
                for (std::size_t g = 0; g < ground.size(); ++g)
                    if (menu & (std::uint32_t{1} << g))
                        if (best < 0 || tier_of[g] < best) best = tier_of[g];
                if (best < 0) return 0;
                std::uint32_t out = 0;
                for (std::size_t g = 0; g < ground.size(); ++g)
                    if ((menu & (std::uint32_t{1} << g)) && tier_of[g] == best)
                        out |= std::uint32_t{1} << g;
                return out;
            }
            case kQuota: {
                std::uint32_t out = 0;
                int taken = 0;
                for (int g : orders[0]) {
                    if (taken >= quota) break;
                    if (menu & (std::uint32_t{1} << g)) {
                        out |= std::uint32_t{1} << g;
                        ++taken;
                    }
                }
                return out;
            }
            case kUnion: {
                std::uint32_t out = 0;
                for (const auto& order : orders) {
                    for (int g : order) {
                        if (menu & (std::uint32_t{1} << g)) {
                            out |= std::uint32_t{1} << g;
                            break;
                        }
                    }
                }
                return out;
            }
            case kTable:
                return table->choices[menu];
        }
        return 0;
    }
};

std::vector<int> order_indices(const std::vector<ContractId>& ground,
                               const std::vector<ContractId>& ranking) {
    std::vector<int> order;
    order.reserve(ranking.size());
    for (const auto& id : ranking) {
        auto it = std::lower_bound(ground.begin(), ground.end(), id);
        if (it == ground.end() || *it != id)
            throw InputError("ranking element '" + id + "' is outside the ground set");
        order.push_back(static_cast<int>(it - ground.begin()));
    }
    return order;
}

MaskEvaluator make_evaluator(const ChoiceSpec& spec) {
    MaskEvaluator ev;
    ev.ground = ground_of(spec);
    std::visit(overloaded{
                   [&](const LinearSpec& s) {
                       ev.kind = MaskEvaluator::kLinear;
                       ev.orders = {order_indices(ev.ground, s.ranking)};
                   },
                   [&](const WeakSpec& s) {
                       ev.kind = MaskEvaluator::kWeak;
                       ev.tier_of.assign(ev.ground.size(), 0);
                       for (std::size_t t = 0; t < s.tiers.size(); ++t)
                           for (const auto& id : s.tiers[t]) {
                               auto it = std::lower_bound(ev.ground.begin(), ev.ground.end(), id);
                               ev.tier_of[static_cast<std::size_t>(it - ev.ground.begin())] =
                                   static_cast<int>(t);
                           }
                   },
                   [&](const QuotaSpec& s) {
                       ev.kind = MaskEvaluator::kQuota;
                       ev.orders = {order_indices(ev.ground, s.ranking)};
                       ev.quota = s.quota;
                   },
                   [&](const UnionSpec& s) {
                       ev.kind = MaskEvaluator::kUnion;
                       for (const auto& part : s.parts)
                           ev.orders.push_back(order_indices(ev.ground, part.ranking));
                   },
                   [&](const TableSpec& s) {
                       ev.kind = MaskEvaluator::kTable;
                       ev.table = &s;
                   },
               },
               spec);
    return ev;
}

} // namespace

std::vector<ContractId> ground_of(const ChoiceSpec& spec) {
    return std::visit(
        overloaded{
            [](const LinearSpec& s) { return sorted_unique(s.ranking); },
            [](const WeakSpec& s) {
                std::vector<ContractId> all;
                for (const auto& tier : s.tiers) all.insert(all.end(), tier.begin(), tier.end());
                return sorted_unique(all);
            },
            [](const QuotaSpec& s) { return sorted_unique(s.ranking); },
            [](const UnionSpec& s) {
                std::vector<ContractId> all;
                for (const auto& part : s.parts)
                    all.insert(all.end(), part.ranking.begin(), part.ranking.end());
                return sorted_unique(all);
            },
            [](const TableSpec& s) { return s.ground; },
        },
        spec);
}

std::vector<std::string> spec_problems(const ChoiceSpec& spec) {
    std::vector<std::string> out;
    auto check_ranking_unique = [&](const std::vector<ContractId>& ranking) {
        auto sorted = ranking;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            out.push_back("ranking mentions an element twice");
    };
    std::visit(overloaded{
                   [&](const LinearSpec& s) { check_ranking_unique(s.ranking); },
                   [&](const WeakSpec& s) {
                       std::vector<ContractId> all;
                       for (const auto& tier : s.tiers) {
                           if (tier.empty()) out.push_back("weak spec has an empty tier");
                           all.insert(all.end(), tier.begin(), tier.end());
                       }
                       auto sorted = all;
                       std::sort(sorted.begin(), sorted.end());
                       if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                           out.push_back("weak tiers are not disjoint");
                   },
                   [&](const QuotaSpec& s) {
                       check_ranking_unique(s.ranking);
                       if (s.quota < 1) out.push_back("quota must be at least 1");
                   },
                   [&](const UnionSpec& s) {
                       if (s.parts.empty()) out.push_back("union spec has no parts");
                       std::vector<ContractId> first;
                       for (std::size_t k = 0; k < s.parts.size(); ++k) {
                           check_ranking_unique(s.parts[k].ranking);
                           auto g = sorted_unique(s.parts[k].ranking);
                           if (k == 0)
                               first = g;
                           else if (g != first)
                               out.push_back("union parts do not share one ground set");
                       }
                   },
                   [&](const TableSpec& s) {
                       if (!std::is_sorted(s.ground.begin(), s.ground.end()) ||
                           std::adjacent_find(s.ground.begin(), s.ground.end()) != s.ground.end())
                           out.push_back("table ground set is not sorted and unique");
                       if (s.ground.size() > 24) {
                           out.push_back("table ground set is too large");
                           return;
                       }
                       const std::size_t want = std::size_t{1} << s.ground.size();
                       if (s.choices.size() != want) {
                           out.push_back("table does not cover every menu exactly once");
                           return;
                       }
                       for (std::size_t m = 0; m < want; ++m)
                           if ((s.choices[m] & ~static_cast<std::uint32_t>(m)) != 0) {
                               out.push_back("table chooses outside a menu");
                               break;
                           }
                       if (!s.choices.empty() && s.choices[0] != 0)
                           out.push_back("table choice on the empty menu is not empty");
                   },
               },
               spec);
    return out;
}

Menu choose(const ChoiceSpec& spec, const Menu& menu) {
    require_subset_of_ground(spec, menu);
    return std::visit(
        overloaded{
            [&](const LinearSpec& s) {
                for (const auto& id : s.ranking)
                    if (menu.count(id)) return Menu{id};
                return Menu{};
            },
            [&](const WeakSpec& s) {
                for (const auto& tier : s.tiers) {
                    Menu out;
                    for (const auto& id : tier)
                        if (menu.count(id)) out.insert(id);
                    if (!out.empty()) return out;
                }
                return Menu{};
            },
            [&](const QuotaSpec& s) {
                Menu out;
                for (const auto& id : s.ranking) {
                    if (static_cast<int>(out.size()) >= s.quota) break;
                    if (menu.count(id)) out.insert(id);
                }
                return out;
            },
            [&](const UnionSpec& s) {
                Menu out;
                for (const auto& part : s.parts)
                    for (const auto& id : part.ranking)
                        if (menu.count(id)) {
                            out.insert(id);
                            break;
                        }
                return out;
            },
            [&](const TableSpec& s) {
                return menu_of(s.ground, s.choices[mask_of(s.ground, menu)]);
            },
        },
        spec);
}

std::uint32_t mask_of(const std::vector<ContractId>& ground, const Menu& menu) {
    std::uint32_t mask = 0;
    for (const auto& id : menu) {
        auto it = std::lower_bound(ground.begin(), ground.end(), id);
        if (it == ground.end() || *it != id)
            throw InputError("element '" + id + "' is outside the ground set");
        mask |= std::uint32_t{1} << (it - ground.begin());
    }
    return mask;
}

Menu menu_of(const std::vector<ContractId>& ground, std::uint32_t mask) {
    Menu out;
    for (std::size_t g = 0; g < ground.size(); ++g)
        if (mask & (std::uint32_t{1} << g)) out.insert(ground[g]);
    return out;
}

TableSpec tabulate(const ChoiceSpec& spec, std::size_t cap) {
    const auto ev = make_evaluator(spec);
    const std::size_t n = checked_ground_size(ev.ground, cap);
    TableSpec out;
    out.ground = ev.ground;
    out.choices.resize(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < out.choices.size(); ++m) out.choices[m] = ev.eval(m);
    return out;
}

CheckResult is_path_independent(const ChoiceSpec& spec, std::size_t cap) {
    const TableSpec t = tabulate(spec, cap);
    const std::uint32_t count = static_cast<std::uint32_t>(t.choices.size());
    for (std::uint32_t a = 0; a < count; ++a) {
        for (std::uint32_t b = 0; b < count; ++b) {
            if (t.choices[a | b] != t.choices[t.choices[a] | b])
                return {false, MenuPair{menu_of(t.ground, a), menu_of(t.ground, b)}};
        }
    }
    return {true, std::nullopt};
}

CheckResult check_heredity(const ChoiceSpec& spec, std::size_t cap) {
    const TableSpec t = tabulate(spec, cap);
    const std::uint32_t count = static_cast<std::uint32_t>(t.choices.size());
    for (std::uint32_t b = 0; b < count; ++b) {
        const std::uint32_t cb = t.choices[b];
        // all submasks a of b, descending
        std::uint32_t a = b;
        while (true) {
            if (((cb & a) & ~t.choices[a]) != 0)
                return {false, MenuPair{menu_of(t.ground, a), menu_of(t.ground, b)}};
            if (a == 0) break;
            a = (a - 1) & b;
        }
    }
    return {true, std::nullopt};
}

CheckResult check_outcast(const ChoiceSpec& spec, std::size_t cap) {
    const TableSpec t = tabulate(spec, cap);
    const std::uint32_t count = static_cast<std::uint32_t>(t.choices.size());
    for (std::uint32_t a = 0; a < count; ++a) {
        const std::uint32_t fa = t.choices[a];
        const std::uint32_t rest = a & ~fa;
        std::uint32_t sub = rest;
        while (true) {
            const std::uint32_t b = fa | sub;
            if (t.choices[b] != fa)
                return {false, MenuPair{menu_of(t.ground, a), menu_of(t.ground, b)}};
            if (sub == 0) break;
            sub = (sub - 1) & rest;
        }
    }
    return {true, std::nullopt};
}

bool nonempty_valued(const ChoiceSpec& spec, std::size_t cap) {
    if (!std::holds_alternative<TableSpec>(spec)) {
        // rank- and tier-based specs always pick something from a nonempty menu
        return spec_problems(spec).empty();
    }
    const auto& t = std::get<TableSpec>(spec);
    checked_ground_size(t.ground, cap);
    for (std::uint32_t m = 1; m < t.choices.size(); ++m)
        if (t.choices[m] == 0) return false;
    return true;
}

Menu largest_null_set(const ChoiceSpec& spec, std::size_t cap) {
    if (!std::holds_alternative<TableSpec>(spec)) {
        if (!spec_problems(spec).empty())
            throw PreconditionError("malformed choice spec");
        return {};
    }
    const auto pi = is_path_independent(spec, cap);
    if (!pi.holds)
        throw PreconditionError("largest_null_set requires a path-independent choice function");
    const auto& t = std::get<TableSpec>(spec);
    std::uint32_t null_union = 0;
    for (std::uint32_t m = 0; m < t.choices.size(); ++m)
        if (t.choices[m] == 0) null_union |= m;
    return menu_of(t.ground, null_union);
}

LinearSpec respecting_order(const ChoiceSpec& spec, const std::optional<Pin>& pin,
                            std::size_t cap) {
    const auto ground = ground_of(spec);
    if (pin) {
        require_subset_of_ground(spec, pin->first);
        const Menu pinned_choice = choose(spec, pin->first);
        if (!pinned_choice.count(pin->second))
            throw InputError("pinned element is not chosen from the pinned menu");
    }

    LinearSpec result;
    Menu remaining(ground.begin(), ground.end());
    auto take = [&](const ContractId& id) {
        result.ranking.push_back(id);
        remaining.erase(id);
    };

    if (pin) {
        const Menu& a_menu = pin->first;
        while (true) {
            Menu ch = choose(spec, remaining);
            if (ch.empty())
                throw PreconditionError("respecting_order requires a non-empty-valued choice function");
            bool inside = true;
            for (const auto& id : ch)
                if (!a_menu.count(id)) {
                    take(id); // least id outside the pinned menu, sets are ordered
                    inside = false;
                    break;
                }
            if (inside) {
                take(pin->second);
                break;
            }
        }
    }
    while (!remaining.empty()) {
        Menu ch = choose(spec, remaining);
        if (ch.empty())
            throw PreconditionError("respecting_order requires a non-empty-valued choice function");
        take(*ch.begin());
    }

    if (ground.size() <= cap && ground.size() <= 24) {
        const TableSpec t = tabulate(spec, cap);
        const auto order = order_indices(t.ground, result.ranking);
        for (std::uint32_t m = 1; m < t.choices.size(); ++m) {
            std::uint32_t top = 0;
            for (int g : order)
                if (m & (std::uint32_t{1} << g)) {
                    top = std::uint32_t{1} << g;
                    break;
                }
            if ((t.choices[m] & top) == 0)
                throw PreconditionError(
                    "respecting_order output failed verification; the input is not a "
                    "path-independent choice function");
        }
    }
    return result;
}

std::vector<LinearSpec> am_decompose(const ChoiceSpec& spec, std::size_t cap) {
    if (std::holds_alternative<LinearSpec>(spec))
        return {std::get<LinearSpec>(spec)};
    if (std::holds_alternative<UnionSpec>(spec)) {
        // the parts are a decomposition already; keep first occurrences
        std::vector<LinearSpec> parts;
        for (const auto& part : std::get<UnionSpec>(spec).parts)
            if (std::find(parts.begin(), parts.end(), part) == parts.end()) parts.push_back(part);
        return parts;
    }

    const TableSpec t = tabulate(spec, cap);
    const std::uint32_t count = static_cast<std::uint32_t>(t.choices.size());
    for (std::uint32_t m = 1; m < count; ++m)
        if (t.choices[m] == 0)
            throw PreconditionError("am_decompose requires a non-empty-valued choice function");
    if (!is_path_independent(spec, cap).holds)
        throw PreconditionError("am_decompose requires a path-independent choice function");

    std::vector<LinearSpec> orders;
    std::vector<std::uint32_t> covered(count, 0); // per menu: elements realized as a maximum
    auto mark = [&](const LinearSpec& order) {
        const auto idx = order_indices(t.ground, order.ranking);
        for (std::uint32_t m = 1; m < count; ++m)
            for (int g : idx)
                if (m & (std::uint32_t{1} << g)) {
                    covered[m] |= std::uint32_t{1} << g;
                    break;
                }
    };

    orders.push_back(respecting_order(spec, std::nullopt, cap));
    mark(orders.back());
    while (true) {
        std::optional<Pin> pin;
        for (std::uint32_t m = 1; m < count && !pin; ++m) {
            const std::uint32_t missing = t.choices[m] & ~covered[m];
            if (missing == 0) continue;
            const int g = std::countr_zero(missing);
            pin = Pin{menu_of(t.ground, m), t.ground[static_cast<std::size_t>(g)]};
        }
        if (!pin) break;
        orders.push_back(respecting_order(spec, pin, cap));
        mark(orders.back());
    }

    for (std::uint32_t m = 0; m < count; ++m)
        if (covered[m] != t.choices[m])
            throw InternalError("am_decompose produced a union that differs from its input");
    return orders;
}

ChoiceSpec rename_spec(const ChoiceSpec& spec, const std::map<ContractId, ContractId>& to_new) {
    auto rename_one = [&](const ContractId& id) {
        auto it = to_new.find(id);
        if (it == to_new.end()) throw InputError("rename map misses id '" + id + "'");
        return it->second;
    };
    auto rename_ranking = [&](const std::vector<ContractId>& ranking) {
        std::vector<ContractId> out;
        out.reserve(ranking.size());
        for (const auto& id : ranking) out.push_back(rename_one(id));
        return out;
    };
    return std::visit(
        overloaded{
            [&](const LinearSpec& s) -> ChoiceSpec { return LinearSpec{rename_ranking(s.ranking)}; },
            [&](const WeakSpec& s) -> ChoiceSpec {
                WeakSpec out;
                for (const auto& tier : s.tiers) {
                    auto renamed = rename_ranking(tier);
                    std::sort(renamed.begin(), renamed.end());
                    out.tiers.push_back(std::move(renamed));
                }
                return out;
            },
            [&](const QuotaSpec& s) -> ChoiceSpec {
                return QuotaSpec{rename_ranking(s.ranking), s.quota};
            },
            [&](const UnionSpec& s) -> ChoiceSpec {
                UnionSpec out;
                for (const auto& part : s.parts) out.parts.push_back({rename_ranking(part.ranking)});
                return out;
            },
            [&](const TableSpec& s) -> ChoiceSpec {
                TableSpec out;
                out.ground = rename_ranking(s.ground);
                std::vector<std::size_t> perm(s.ground.size()); // old index -> new index
                {
                    auto sorted = out.ground;
                    std::sort(sorted.begin(), sorted.end());
                    for (std::size_t i = 0; i < out.ground.size(); ++i) {
                        auto it = std::lower_bound(sorted.begin(), sorted.end(), out.ground[i]);
                        perm[i] = static_cast<std::size_t>(it - sorted.begin());
                    }
                    out.ground = sorted;
                }
                auto remap = [&](std::uint32_t mask) {
                    std::uint32_t res = 0;
                    for (std::size_t i = 0; i < perm.size(); ++i)
                        if (mask & (std::uint32_t{1} << i)) res |= std::uint32_t{1} << perm[i];
                    return res;
                };
                out.choices.resize(s.choices.size());
                for (std::uint32_t m = 0; m < s.choices.size(); ++m)
                    out.choices[remap(m)] = remap(s.choices[m]);
                return out;
            },
        },
        spec);
}

ChoiceSpec restrict_spec(const ChoiceSpec& spec, const Menu& keep) {
    auto filter = [&](const std::vector<ContractId>& ids) {
        std::vector<ContractId> out;
        for (const auto& id : ids)
            if (keep.count(id)) out.push_back(id);
        return out;
    };
    return std::visit(
        overloaded{
            [&](const LinearSpec& s) -> ChoiceSpec { return LinearSpec{filter(s.ranking)}; },
            [&](const WeakSpec& s) -> ChoiceSpec {
                WeakSpec out;
                for (const auto& tier : s.tiers) {
                    auto kept = filter(tier);
                    if (!kept.empty()) out.tiers.push_back(std::move(kept));
                }
                return out;
            },
            [&](const QuotaSpec& s) -> ChoiceSpec {
                return QuotaSpec{filter(s.ranking), s.quota};
            },
            [&](const UnionSpec& s) -> ChoiceSpec {
                UnionSpec out;
                for (const auto& part : s.parts) out.parts.push_back({filter(part.ranking)});
                return out;
            },
            [&](const TableSpec& s) -> ChoiceSpec {
                TableSpec out;
                out.ground = filter(s.ground);
                std::vector<std::size_t> old_index;
                for (std::size_t i = 0; i < s.ground.size(); ++i)
                    if (keep.count(s.ground[i])) old_index.push_back(i);
                out.choices.resize(std::size_t{1} << out.ground.size());
                for (std::uint32_t m = 0; m < out.choices.size(); ++m) {
                    std::uint32_t big = 0;
                    for (std::size_t i = 0; i < old_index.size(); ++i)
                        if (m & (std::uint32_t{1} << i)) big |= std::uint32_t{1} << old_index[i];
                    const std::uint32_t chosen = s.choices[big];
                    std::uint32_t small = 0;
                    for (std::size_t i = 0; i < old_index.size(); ++i)
                        if (chosen & (std::uint32_t{1} << old_index[i]))
                            small |= std::uint32_t{1} << i;
                    out.choices[m] = small;
                }
                return out;
            },
        },
        spec);
}

ChoiceSpec pullback(const std::map<ContractId, ContractId>& projection, const ChoiceSpec& g,
                    std::size_t cap) {
    const auto g_ground = ground_of(g);
    std::vector<ContractId> domain;
    domain.reserve(projection.size());
    for (const auto& [x, y] : projection) {
        if (!std::binary_search(g_ground.begin(), g_ground.end(), y))
            throw InputError("projection maps '" + x + "' to '" + y +
                             "', which is outside the ground set");
        domain.push_back(x);
    }

    // Bijections just rename the spec, whatever its kind.
    {
        std::set<ContractId> values;
        for (const auto& [x, y] : projection) values.insert(y);
        if (values.size() == projection.size() && values.size() == g_ground.size()) {
            std::map<ContractId, ContractId> inverse;
            for (const auto& [x, y] : projection) inverse[y] = x;
            return rename_spec(g, inverse);
        }
    }

    const bool order_based =
        std::holds_alternative<LinearSpec>(g) || std::holds_alternative<WeakSpec>(g);
    if (order_based) {
        std::vector<std::vector<ContractId>> g_tiers;
        if (const auto* lin = std::get_if<LinearSpec>(&g)) {
            for (const auto& id : lin->ranking) g_tiers.push_back({id});
        } else {
            g_tiers = std::get<WeakSpec>(g).tiers;
        }
        WeakSpec out;
        for (const auto& tier : g_tiers) {
            std::vector<ContractId> pre;
            for (const auto& [x, y] : projection)
                if (std::find(tier.begin(), tier.end(), y) != tier.end()) pre.push_back(x);
            std::sort(pre.begin(), pre.end());
            if (!pre.empty()) out.tiers.push_back(std::move(pre));
        }
        bool all_single = true;
        for (const auto& tier : out.tiers) all_single = all_single && tier.size() == 1;
        if (all_single) {
            LinearSpec lin;
            for (const auto& tier : out.tiers) lin.ranking.push_back(tier.front());
            return lin;
        }
        return out;
    }

    TableSpec out;
    out.ground = domain; // map keys are already sorted
    checked_ground_size(out.ground, cap);
    out.choices.resize(std::size_t{1} << out.ground.size());
    for (std::uint32_t m = 0; m < out.choices.size(); ++m) {
        Menu image;
        for (std::size_t i = 0; i < out.ground.size(); ++i)
            if (m & (std::uint32_t{1} << i)) image.insert(projection.at(out.ground[i]));
        const Menu chosen = choose(g, image);
        std::uint32_t res = 0;
        for (std::size_t i = 0; i < out.ground.size(); ++i)
            if ((m & (std::uint32_t{1} << i)) && chosen.count(projection.at(out.ground[i])))
                res |= std::uint32_t{1} << i;
        out.choices[m] = res;
    }
    return out;
}

bool blair_leq(const ChoiceSpec& spec, const Menu& a, const Menu& b) {
    Menu both = a;
    both.insert(b.begin(), b.end());
    const Menu chosen = choose(spec, both);
    return std::includes(b.begin(), b.end(), chosen.begin(), chosen.end());
}

std::optional<WeakSpec> weak_representation(const ChoiceSpec& spec, std::size_t cap) {
    const TableSpec t = tabulate(spec, cap);
    const std::size_t n = t.ground.size();
    if (n == 0) return WeakSpec{};

    // Candidate tiers from pairwise choices: rank elements by how many others
    // they (weakly) beat head to head.
    std::vector<int> score(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            const std::uint32_t pair =
                (std::uint32_t{1} << x) | (std::uint32_t{1} << y);
            if (t.choices[pair] & (std::uint32_t{1} << x)) ++score[x];
        }
    std::vector<std::size_t> by_score(n);
    std::iota(by_score.begin(), by_score.end(), std::size_t{0});
    std::stable_sort(by_score.begin(), by_score.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    WeakSpec candidate;
    std::vector<int> tier_of(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || score[by_score[i]] != score[by_score[i - 1]]) candidate.tiers.push_back({});
        candidate.tiers.back().push_back(t.ground[by_score[i]]);
        tier_of[by_score[i]] = static_cast<int>(candidate.tiers.size()) - 1;
    }
    for (auto& tier : candidate.tiers) std::sort(tier.begin(), tier.end());

    for (std::uint32_t m = 0; m < t.choices.size(); ++m) {
        int best = -1;
        for (std::size_t g = 0; g < n; ++g)
            if (m & (std::uint32_t{1} << g))
                if (best < 0 || tier_of[g] < best) best = tier_of[g];
        std::uint32_t expect = 0;
        for (std::size_t g = 0; g < n; ++g)
            if ((m & (std::uint32_t{1} << g)) && tier_of[g] == best)
                expect |= std::uint32_t{1} << g;
        if (expect != t.choices[m]) return std::nullopt;
    }
    return candidate;
}

std::map<ContractId, long long> utility_levels(const ChoiceSpec& spec) {
    std::map<ContractId, long long> out;
    if (const auto* lin = std::get_if<LinearSpec>(&spec)) {
        const long long n = static_cast<long long>(lin->ranking.size());
        for (long long i = 0; i < n; ++i) out[lin->ranking[static_cast<std::size_t>(i)]] = n - 1 - i;
        return out;
    }
    if (const auto* weak = std::get_if<WeakSpec>(&spec)) {
        const long long n = static_cast<long long>(weak->tiers.size());
        for (long long t = 0; t < n; ++t)
            for (const auto& id : weak->tiers[static_cast<std::size_t>(t)]) out[id] = n - 1 - t;
        return out;
    }
    throw PreconditionError("utility levels are defined for linear and weak specs only");
}

} // namespace cnets
