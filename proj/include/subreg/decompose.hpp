#ifndef SUBREG_DECOMPOSE_HPP_
#define SUBREG_DECOMPOSE_HPP_

#include <map>
#include <string>
#include <string_view>

#include "subreg/core.hpp"
#include "subreg/sfst.hpp"

namespace subreg {

/// A concatenation-preserving string map given by per-symbol images.
class Homomorphism {
public:
    explicit Homomorphism(std::map<Symbol, Str> mapping) : mapping_(std::move(mapping)) {}

    /// Reads `MAP sym : out-sym...` lines.
    static Homomorphism parse(std::string_view text);
    std::string serialize() const;

    const std::map<Symbol, Str>& mapping() const { return mapping_; }

    /// Concatenated per-symbol images; UnknownSymbol outside the source alphabet.
    Str apply(const Str& x) const;

private:
    std::map<Symbol, Str> mapping_;
};

/// The tag of the pair symbols carrying final outputs.
inline constexpr std::string_view kSigmaTag = "SIGMA";

/// A pair symbol `tag|p1.p2`: a state tag (or the SIGMA marker) combined with
/// an output payload. Distinct (tag, payload) pairs are distinct tokens.
Symbol pair_symbol(std::string_view tag, const Str& payload);

struct Decomposition {
    Sfst first;       // state-tagging machine, output-local with window 2
    Homomorphism second; // tag eraser; the composite equals the original
};

/// Factors the machine's function through its minimal form: the first factor
/// emits one pair symbol (target state, step output) per input symbol and a
/// SIGMA-tagged pair as its final output; the second erases the tags. The
/// composite computes the original function, and the first factor is
/// 2-output strictly local on the full tier because each pair symbol names
/// the state just entered.
Decomposition decompose(const Sfst& machine);

} // namespace subreg

#endif // SUBREG_DECOMPOSE_HPP_
