#ifndef SUBREG_CORE_HPP_
#define SUBREG_CORE_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "subreg/error.hpp"

namespace subreg {

/// An atomic alphabet token. Tokens are opaque, non-empty, whitespace-free
/// strings compared byte-exactly. The left word boundary is a reserved token
/// (`LB`) that user alphabets may not contain; it shows up only in padded
/// suffix windows and in the state names of canonical machines.
class Symbol {
public:
    /// Validating constructor for user symbols. Rejects the boundary token.
    explicit Symbol(std::string token);

    /// The reserved left-boundary marker.
    static Symbol boundary();

    /// Bypasses validation; for tokens the library itself manufactured.
    static Symbol unchecked(std::string token);

    const std::string& token() const { return token_; }
    bool is_boundary() const;

    auto operator<=>(const Symbol& other) const { return token_ <=> other.token_; }
    bool operator==(const Symbol& other) const = default;

private:
    struct Unchecked {};
    Symbol(Unchecked, std::string token) : token_(std::move(token)) {}

    std::string token_;
};

/// The reserved boundary token spelling.
inline constexpr std::string_view kBoundaryToken = "LB";

/// A finite sequence of symbols. The empty sequence is the unique
/// representation of the empty string.
class Str {
public:
    Str() = default;
    explicit Str(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
    Str(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

    /// Splits whitespace-separated tokens into user symbols (boundary rejected).
    static Str parse(std::string_view text);

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }
    const std::vector<Symbol>& symbols() const { return symbols_; }

    void push_back(Symbol s) { symbols_.push_back(std::move(s)); }
    void append(const Str& other);
    Str operator+(const Str& other) const;
    Str operator+(const Symbol& s) const;

    bool is_prefix_of(const Str& other) const;
    /// Drops `n` leading symbols; `n` must not exceed the length.
    Str drop_front(std::size_t n) const;
    /// Drops `prefix` from the front; raises InternalError if it is not a prefix.
    Str drop_prefix(const Str& prefix) const;

    bool contains_boundary() const;

    /// Tokens joined by single spaces; the empty string for the empty sequence.
    std::string to_string() const;

    auto operator<=>(const Str& other) const = default;

private:
    std::vector<Symbol> symbols_;
};

/// Longest common prefix of a non-empty collection of strings.
Str lcp(const std::vector<Str>& strings);
Str lcp(const Str& a, const Str& b);

/// The last `k` symbols of `LB^k x`: always exactly `k` symbols, padded with
/// boundary markers on the left when `x` is shorter than `k`.
Str ksuffix(const Str& x, std::size_t k);

/// An erasing homomorphism over an alphabet: every symbol is either kept
/// ("on the tier") or deleted. Boundary symbols pass through unchanged, so
/// padded suffix windows can be re-tiered without truncation errors.
class Tier {
public:
    Tier(std::set<Symbol> alphabet, std::set<Symbol> on_tier);

    static Tier full(std::set<Symbol> alphabet);
    static Tier none(std::set<Symbol> alphabet);

    const std::set<Symbol>& alphabet() const { return alphabet_; }
    const std::set<Symbol>& on_tier() const { return on_tier_; }

    bool is_on(const Symbol& s) const { return on_tier_.count(s) > 0; }

    /// Deletes off-tier symbols. Raises UnknownSymbol for symbols outside the
    /// alphabet (boundary symbols excepted).
    Str apply(const Str& x) const;

    bool operator==(const Tier& other) const = default;

private:
    std::set<Symbol> alphabet_;
    std::set<Symbol> on_tier_;
};

/// One computation step: a single input symbol paired with the output string
/// it emitted.
struct Action {
    Symbol input;
    Str output;

    /// Serializes as `in:out1.out2`. The constituent tokens may not contain
    /// `:` or `.`, which are reserved inside action tokens.
    Symbol to_symbol() const;
    static Action from_symbol(const Symbol& s);

    auto operator<=>(const Action& other) const = default;
};

/// A finite sequence of actions: a computation history.
class ActionStr {
public:
    ActionStr() = default;
    explicit ActionStr(std::vector<Action> actions) : actions_(std::move(actions)) {}

    std::size_t size() const { return actions_.size(); }
    bool empty() const { return actions_.empty(); }
    const Action& operator[](std::size_t i) const { return actions_[i]; }
    auto begin() const { return actions_.begin(); }
    auto end() const { return actions_.end(); }

    void push_back(Action a) { actions_.push_back(std::move(a)); }

    /// The input symbols, in order.
    Str input_projection() const;
    /// The concatenated outputs, in order.
    Str output_projection() const;
    /// The history as a string over action symbols.
    Str to_str() const;

    std::string to_string() const { return to_str().to_string(); }

    bool operator==(const ActionStr& other) const = default;

private:
    std::vector<Action> actions_;
};

/// The action set rendered as an alphabet of action symbols.
std::set<Symbol> action_symbols(const std::set<Action>& actions);

/// Slides a padded suffix window: appends the (already tiered) increment to
/// the window and keeps the last `k` symbols, boundary-padded. Windows are
/// always `LB`-padded on the left, never in the interior.
Str extend_window(const Str& window, const Str& tiered_increment, std::size_t k);

} // namespace subreg

#endif // SUBREG_CORE_HPP_
