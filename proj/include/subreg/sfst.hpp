#ifndef SUBREG_SFST_HPP_
#define SUBREG_SFST_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subreg/core.hpp"

namespace subreg {

using StateIdx = std::size_t;

/// A state name. Canonical machines carry the tuple structure their state
/// names encode; other machines carry opaque names. Structured names render
/// as `(c1,c2)` for synchronized windows and `(c1,c2|d1,d2)` for input/output
/// window pairs, and round-trip through the text format.
struct StateName {
    std::string text;
    /// Window over `{LB} ∪ actions`, length k-1.
    std::optional<Str> sync_tuple;
    /// Input window (length i-1) and output window (length j-1).
    std::optional<std::pair<Str, Str>> io_tuple;

    static StateName opaque(std::string text);
    /// Builds the display text from the tuple. Falls back to an opaque name
    /// when a component token contains a structure delimiter.
    static StateName sync(const Str& tuple);
    static StateName io(const Str& input_window, const Str& output_window);

    /// Recovers structure from a `(...)`-shaped token; ParseError if malformed.
    static StateName parse(const std::string& token);

    bool structured() const { return sync_tuple.has_value() || io_tuple.has_value(); }
};

struct Transition {
    StateIdx target = 0;
    Str output;

    bool operator==(const Transition&) const = default;
};

/// A subsequential finite-state transducer: a total deterministic transducer
/// with a per-state final output. The transition table is total over
/// states × input alphabet, so every machine computes a total function.
/// Machines are immutable once built; algorithms produce new machines.
class Sfst {
public:
    class Builder {
    public:
        Builder(std::set<Symbol> input_alphabet, std::set<Symbol> output_alphabet);

        StateIdx add_state(StateName name);
        StateIdx add_state(std::string opaque_name);
        void set_start(StateIdx state);
        void set_transition(StateIdx from, const Symbol& input, StateIdx to, Str output);
        void set_final(StateIdx state, Str output);

        /// Validates totality and alphabet discipline (NotTotal / UnknownSymbol).
        Sfst build() &&;

    private:
        std::vector<StateName> names_;
        std::set<Symbol> input_alphabet_;
        std::set<Symbol> output_alphabet_;
        std::vector<std::map<Symbol, Transition>> transitions_;
        std::vector<std::optional<Str>> finals_;
        std::optional<StateIdx> start_;
        std::set<std::string> used_names_;
    };

    const std::set<Symbol>& input_alphabet() const { return input_alphabet_; }
    const std::set<Symbol>& output_alphabet() const { return output_alphabet_; }
    std::size_t state_count() const { return names_.size(); }
    StateIdx start() const { return start_; }
    const StateName& state_name(StateIdx q) const { return names_[q]; }
    std::optional<StateIdx> state_by_name(std::string_view text) const;

    const Transition& transition(StateIdx q, const Symbol& input) const;
    const std::map<Symbol, Transition>& transitions_from(StateIdx q) const { return transitions_[q]; }
    const Str& final_output(StateIdx q) const { return finals_[q]; }

private:
    Sfst() = default;

    std::vector<StateName> names_;
    std::set<Symbol> input_alphabet_;
    std::set<Symbol> output_alphabet_;
    StateIdx start_ = 0;
    std::vector<std::map<Symbol, Transition>> transitions_;
    std::vector<Str> finals_;
};

/// Runs the machine: concatenated transition outputs plus the final output of
/// the ending state. UnknownSymbol for inputs outside the input alphabet.
Str transduce(const Sfst& machine, const Str& input);

/// The ending state of the unique run on `input`.
StateIdx run_state(const Sfst& machine, const Str& input);

/// The transition labels along the unique run, as actions.
ActionStr run_trace(const Sfst& machine, const Str& input);

/// Every (input, output) pair appearing as a transition label.
std::set<Action> actions_of_machine(const Sfst& machine);

struct OnwardViolation {
    StateIdx state;
    Str shared_prefix;
};

/// The onwardness condition: at every state except the start, the outgoing
/// transition outputs together with the final output share no common
/// non-empty prefix. Returns a violating state and its shared prefix, or
/// nullopt when the machine is onward.
std::optional<OnwardViolation> onward_violation(const Sfst& machine);
bool is_onward(const Sfst& machine);

/// Pushes output prefixes toward the start until the machine is onward.
/// Computes the greatest family of pushable per-state prefixes as a fixpoint
/// and rebuilds the labels once; the start state is exempt, so no output
/// moves ahead of the first input symbol. Returns the input unchanged when it
/// is already onward. Preserves the computed function exactly.
Sfst make_onward(const Sfst& machine);

/// Per-state lcp of every output the machine can still produce (final output
/// included). The start state's entry is the lcp of the whole image of the
/// computed function; it vanishes on onward machines exactly when no common
/// prefix is shared by all outputs.
std::vector<Str> future_lcp(const Sfst& machine);

/// Drops states unreachable from the start.
Sfst trim(const Sfst& machine);

/// Onward, trimmed form with behaviorally equal states merged
/// (Moore-style partition refinement on final outputs, per-symbol outputs,
/// and per-symbol successor blocks). States are renamed q0, q1, ... in
/// breadth-first order from the start.
Sfst minimize(const Sfst& machine);

/// Decides whether two machines compute the same function, by minimizing
/// both and comparing them up to the canonical breadth-first state numbering.
/// Requires equal input alphabets (AlphabetMismatch otherwise); declared
/// output alphabets are immaterial.
bool equivalent(const Sfst& a, const Sfst& b);

/// Reads the line-oriented text format (see README). Reports syntax errors
/// with line numbers; missing transition or final rows are NotTotal.
Sfst parse_sfst(std::string_view text);

/// Writes the text format; parse(serialize(T)) reconstructs the machine.
std::string serialize(const Sfst& machine);

/// Graphviz export: one node per state (start doubled), one edge per
/// transition labeled `in:out` with the empty output rendered as `in:`,
/// final outputs as node annotations.
std::string to_dot(const Sfst& machine);

} // namespace subreg

#endif // SUBREG_SFST_HPP_
