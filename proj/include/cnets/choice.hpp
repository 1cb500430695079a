#ifndef CNETS_CHOICE_HPP
#define CNETS_CHOICE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cnets {

using ContractId = std::string;
using Menu = std::set<ContractId>;

/// Strict ranking, best element first. Chooses the top element of a menu.
struct LinearSpec {
    std::vector<ContractId> ranking;
    bool operator==(const LinearSpec&) const = default;
};

/// Total preorder given as tiers of mutually indifferent elements, best tier
/// first. Chooses every element of the best tier represented in the menu.
struct WeakSpec {
    std::vector<std::vector<ContractId>> tiers;
    bool operator==(const WeakSpec&) const = default;
};

/// Chooses the `quota` best elements of the menu under `ranking` (the whole
/// menu when it has at most `quota` elements).
struct QuotaSpec {
    std::vector<ContractId> ranking;
    int quota = 1;
    bool operator==(const QuotaSpec&) const = default;
};

/// Pointwise union of linear choice functions over a common ground set.
struct UnionSpec {
    std::vector<LinearSpec> parts;
    bool operator==(const UnionSpec&) const = default;
};

/// Explicit choice table. `ground` is sorted; `choices[m]` is the chosen
/// subset (as a bitmask over `ground`) of the menu encoded by mask `m`, so
/// the vector has exactly 2^|ground| entries.
struct TableSpec {
    std::vector<ContractId> ground;
    std::vector<std::uint32_t> choices;
    bool operator==(const TableSpec&) const = default;
};

using ChoiceSpec = std::variant<LinearSpec, WeakSpec, QuotaSpec, UnionSpec, TableSpec>;

/// Default cap on ground-set size for exhaustive menu scans (2^cap menus).
inline constexpr std::size_t kDefaultGroundCap = 16;

/// Sorted ground set of a spec.
std::vector<ContractId> ground_of(const ChoiceSpec& spec);

/// Structural invariant violations of a spec; empty when well formed.
std::vector<std::string> spec_problems(const ChoiceSpec& spec);

/// Evaluate the choice function on a menu. The menu must be a subset of the
/// ground set (InputError otherwise).
Menu choose(const ChoiceSpec& spec, const Menu& menu);

struct MenuPair {
    Menu a;
    Menu b;
};

struct CheckResult {
    bool holds = true;
    std::optional<MenuPair> witness;
};

/// Exhaustive check of f(A∪B) = f(f(A)∪B) over all pairs of menus.
CheckResult is_path_independent(const ChoiceSpec& spec, std::size_t cap = kDefaultGroundCap);

/// Heredity: A ⊆ B implies f(B) ∩ A ⊆ f(A).
CheckResult check_heredity(const ChoiceSpec& spec, std::size_t cap = kDefaultGroundCap);

/// Outcast: f(A) ⊆ B ⊆ A implies f(A) = f(B).
CheckResult check_outcast(const ChoiceSpec& spec, std::size_t cap = kDefaultGroundCap);

/// The largest set with empty choice (union of all such sets). Requires a
/// path-independent spec.
Menu largest_null_set(const ChoiceSpec& spec, std::size_t cap = kDefaultGroundCap);

/// Optional anchor for respecting_order: the returned ranking must make
/// `second` the maximum of the menu `first`.
using Pin = std::pair<Menu, ContractId>;

/// A linear order whose maximum of every nonempty menu lies in the choice.
/// Requires a non-empty-valued path-independent spec. The output is verified
/// by an exhaustive menu scan whenever the ground set is within the cap.
LinearSpec respecting_order(const ChoiceSpec& spec,
                            const std::optional<Pin>& pin = std::nullopt,
                            std::size_t cap = kDefaultGroundCap);

/// Linear orders whose pointwise union reproduces the spec on every menu.
std::vector<LinearSpec> am_decompose(const ChoiceSpec& spec, std::size_t cap = kDefaultGroundCap);

/// Pull a choice function back along a projection: f(A) = A ∩ π⁻¹(g(π(A))).
/// The projection's keys form the new ground set and every value must lie in
/// g's ground set. Linear/weak specs pull back to weak specs; other kinds
/// produce an explicit table.
ChoiceSpec pullback(const std::map<ContractId, ContractId>& projection,
                    const ChoiceSpec& g,
                    std::size_t cap = kDefaultGroundCap);

/// Blair hyper-relation: A ⪯ B iff f(A∪B) ⊆ B.
bool blair_leq(const ChoiceSpec& spec, const Menu& a, const Menu& b);

/// The weak-order form of the spec when one reproduces it on every menu.
/// The candidate order is built from pairwise choices and verified
/// exhaustively.
std::optional<WeakSpec> weak_representation(const ChoiceSpec& spec,
                                            std::size_t cap = kDefaultGroundCap);

/// True when every nonempty menu has nonempty choice.
bool nonempty_valued(const ChoiceSpec& spec, std::size_t cap = kDefaultGroundCap);

/// Integer utility levels of a linear or weak spec; the worst level is 0.
std::map<ContractId, long long> utility_levels(const ChoiceSpec& spec);

/// Compile any spec into an explicit table (cap-guarded).
TableSpec tabulate(const ChoiceSpec& spec, std::size_t cap = kDefaultGroundCap);

/// Rewrite every contract id through `to_new` (must be injective and total
/// on the ground set).
ChoiceSpec rename_spec(const ChoiceSpec& spec, const std::map<ContractId, ContractId>& to_new);

/// Restrict a spec to the menus over `keep` ∩ ground.
ChoiceSpec restrict_spec(const ChoiceSpec& spec, const Menu& keep);

// Bitmask helpers over a sorted ground set; shared by the exhaustive scans
// and the brute-force oracles.
std::uint32_t mask_of(const std::vector<ContractId>& ground, const Menu& menu);
Menu menu_of(const std::vector<ContractId>& ground, std::uint32_t mask);

} // namespace cnets

#endif
