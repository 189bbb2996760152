#ifndef SUBREG_CLASSES_HPP_
#define SUBREG_CLASSES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "subreg/core.hpp"
#include "subreg/sfst.hpp"
#include "subreg/views.hpp"

namespace subreg {

/// Window widths for input/output strict locality; both are >= 1.
/// (input, 1) is input-only locality, (1, output) is output-only locality.
struct LocalityParams {
    std::size_t input_locality = 1;
    std::size_t output_locality = 1;
};

/// A replayable counterexample: w and x have equal tiered suffix profiles but
/// their translations differ on `continuation` (which may be empty, when the
/// state-final outputs already differ).
struct Witness {
    Str w;
    Str x;
    Str continuation;
};

struct Verdict {
    bool member = false;
    std::optional<Witness> witness;
};

class NotInClassError : public Error {
public:
    NotInClassError(Witness witness, const std::string& message)
        : Error(ErrorCode::NotInClass, message), witness(std::move(witness)) {}

    Witness witness;
};

/// Exact decision of input/output strict locality on a tier over the joint
/// input/output alphabet: explores the product of canonical states with
/// padded (input-suffix, output-suffix) windows and reports the first two
/// access strings whose windows agree but whose canonical states differ.
/// The handle must be machine-backed (ExactUnsupported otherwise); the tier
/// alphabet must equal the joint alphabet (AlphabetMismatch).
Verdict check_tiosl(const FunctionHandle& handle, LocalityParams params, const Tier& tier);

/// Exact decision of synchronized strict locality on a tier over the action
/// alphabet: as check_tiosl, with a single window over the tiered action
/// history.
Verdict check_tssl(const FunctionHandle& handle, std::size_t k, const Tier& tier);

/// Enumeration oracles: test the defining implication directly on every pair
/// of strings up to `max_len`, comparing translations on every continuation
/// up to `max_len`. f-top is approximated by bounded lcp (horizon at least
/// `max_len`), so these run against formula-backed handles too. A false
/// verdict carries a found witness; a true verdict means no violation within
/// the bound.
Verdict brute_check_tiosl(const FunctionHandle& handle, LocalityParams params, const Tier& tier,
                          std::size_t max_len, std::size_t horizon = 6);
Verdict brute_check_tssl(const FunctionHandle& handle, std::size_t k, const Tier& tier,
                         std::size_t max_len, std::size_t horizon = 6);

struct CanonicalOptions {
    /// Materialize the full Cartesian window state set instead of only the
    /// breadth-first-reachable windows. Unreachable windows get transitions
    /// that follow the window-update rule with canonically chosen outputs.
    bool full_state_set = false;
};

/// The canonical synchronized-local machine: states are tiered action-history
/// windows, transitions follow the window-update rule, final outputs are the
/// representatives' state-final translations. Raises NotInClassError (with a
/// replayable witness) when two representatives share a window but disagree.
Sfst build_canonical_tssl(const FunctionHandle& handle, std::size_t k, const Tier& tier,
                          CanonicalOptions options = {});

/// The canonical input/output-local machine, with (input window, output
/// window) pair states.
Sfst build_canonical_tiosl(const FunctionHandle& handle, LocalityParams params, const Tier& tier,
                           CanonicalOptions options = {});

/// Purely syntactic shape validation: state names must carry window structure
/// (ShapeUnverifiable otherwise), the start must be the all-boundary window,
/// and every transition target must equal the window update of its source.
/// States may be any subset of the full Cartesian window set. The tier runs
/// over the machine's own action alphabet (respectively its joint alphabet).
bool shape_check_tssl(const Sfst& machine, std::size_t k, const Tier& tier);
bool shape_check_tiosl(const Sfst& machine, LocalityParams params, const Tier& tier);

/// Input lift of a symbol tier to an action tier: an action is on the lifted
/// tier exactly when its input symbol is on the source tier.
Tier lift_tier_input(const Tier& tier, const std::set<Action>& actions);

/// Output lift: an action is on the lifted tier exactly when its output
/// retains at least one on-tier symbol.
Tier lift_tier_output(const Tier& tier, const std::set<Action>& actions);

/// One evaluated point of a tier search.
struct SearchEntry {
    std::uint32_t tier_mask = 0;
    std::vector<Symbol> on_tier;
    LocalityParams params;
    std::size_t k = 0;
    Verdict verdict;
};

struct SearchReport {
    std::vector<Symbol> alphabet;
    std::vector<SearchEntry> entries;

    bool any_member() const;
    std::vector<const SearchEntry*> members() const;
};

/// Evaluates every tier over the joint alphabet at every locality pair up to
/// the bounds, in tier-bitmask order. SearchTooLarge beyond 16 symbols.
SearchReport search_tiers_tiosl(const FunctionHandle& handle, std::size_t max_input,
                                std::size_t max_output);

/// Evaluates every tier over the action alphabet for k = 1..max_k.
SearchReport search_tiers_tssl(const FunctionHandle& handle, std::size_t max_k);

} // namespace subreg

#endif // SUBREG_CLASSES_HPP_
