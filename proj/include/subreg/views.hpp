#ifndef SUBREG_VIEWS_HPP_
#define SUBREG_VIEWS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "subreg/core.hpp"
#include "subreg/sfst.hpp"

namespace subreg {

/// Every string over the alphabet up to `max_len`, shortest first, ties in
/// symbol order.
std::vector<Str> all_strings(const std::set<Symbol>& alphabet, std::size_t max_len);

/// A subsequential function packaged with its canonical machine. The machine
/// backing is exact: f-top, translations, runs, and the action alphabet are
/// computed from the onward minimal form, never by enumeration. A handle may
/// instead wrap a black-box formula; such handles answer the same queries by
/// bounded enumeration and refuse the exact deciders (ExactUnsupported).
class FunctionHandle {
public:
    using Formula = std::function<Str(const Str&)>;

    /// Canonicalizes the machine and spot-checks that canonicalization
    /// preserved the function on all inputs up to `verify_length`.
    static FunctionHandle from_machine(Sfst machine, std::size_t verify_length = 4);

    /// Bounded-oracle mode: f-top is approximated by the lcp of outputs over
    /// continuations of length <= `horizon`. Intended for test oracles.
    static FunctionHandle from_formula(Formula formula, std::set<Symbol> input_alphabet,
                                       std::set<Symbol> output_alphabet, std::size_t horizon = 4);

    /// True when the handle can back the exact class deciders.
    bool exact() const { return canon_.has_value(); }

    const Sfst& source() const;
    const Sfst& canon() const;

    const std::set<Symbol>& input_alphabet() const { return input_alphabet_; }
    const std::set<Symbol>& output_alphabet() const { return output_alphabet_; }

    /// f itself.
    Str apply(const Str& x) const;

    /// f-top: the longest common prefix of f over all continuations of x.
    Str f_top(const Str& x) const;

    /// The translation of f by x, applied to y: f(xy) with f-top(x) removed.
    Str translation_apply(const Str& x, const Str& y) const;

    /// The run of f on x: the sequence of f-top increments, one per input
    /// symbol. The run on the empty string is empty.
    ActionStr run_of(const Str& x) const;

    /// The action alphabet of f: every (symbol, f-top increment) pair.
    const std::set<Action>& actions() const;

    /// f-top of the empty string: the shared prefix of the whole image.
    const Str& initial_emission() const { return initial_emission_; }

    /// One canonical step from a canon state, with the output normalized to
    /// the f-top increment it contributes. Exact handles only.
    std::pair<Action, StateIdx> canon_step(StateIdx state, const Symbol& input) const;

    /// The translation at a canon state, applied to the empty string.
    Str state_final(StateIdx state) const;

private:
    FunctionHandle() = default;

    std::optional<Sfst> source_;
    std::optional<Sfst> canon_;
    std::vector<Str> future_;
    Formula formula_;
    std::set<Symbol> input_alphabet_;
    std::set<Symbol> output_alphabet_;
    std::size_t horizon_ = 4;
    Str initial_emission_;
    mutable std::optional<std::set<Action>> actions_;
};

/// Shortest input string that distinguishes two canon states: a continuation
/// on which their translations differ (possibly the empty string, when the
/// state-final outputs differ). The states must be distinct states of the
/// handle's canonical machine.
Str distinguishing_continuation(const FunctionHandle& handle, StateIdx a, StateIdx b);

} // namespace subreg

#endif // SUBREG_VIEWS_HPP_
