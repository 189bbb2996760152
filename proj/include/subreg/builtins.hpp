#ifndef SUBREG_BUILTINS_HPP_
#define SUBREG_BUILTINS_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "subreg/core.hpp"
#include "subreg/sfst.hpp"

namespace subreg {

/// The bundled machines:
///  - `reduction`: alternating vowels reduce to a schwa, starting from the
///    first vowel (2-output-local with consonants off the tier);
///  - `syncope`: alternating vowels delete, starting from the first vowel
///    (the action-local counterpart of `reduction`);
///  - `tiosl-not-tssl`: an input/output-local function whose deleting actions
///    can crowd any bounded action window;
///  - `nononward-tssl`: a non-onward action-local machine computing
///    xy -> xyx, which no onward action-local machine can do.
const std::vector<std::string>& builtin_names();
bool is_builtin(std::string_view name);
const Sfst& builtin(std::string_view name);

/// Rhythmic syncope over {C, V}: deletes the 1st, 3rd, 5th, ... vowels.
Str rs_direct(const Str& x);

/// Rhythmic reduction over {C, V}: replaces the 1st, 3rd, 5th, ... vowels
/// with `@`.
Str reduction_direct(const Str& x);

/// A total map from surface segments to their class (C, V, or @), used to
/// transliterate word lists into the toolkit's segment-class alphabet.
class SegmentClasses {
public:
    explicit SegmentClasses(std::map<Symbol, Symbol> mapping);

    /// Reads `CLASS segment : C|V|@` lines.
    static SegmentClasses parse(std::string_view text);

    const std::map<Symbol, Symbol>& mapping() const { return mapping_; }

    /// Per-segment image; UnmappedSegment for segments without a class.
    Str transliterate(const Str& word) const;

private:
    std::map<Symbol, Symbol> mapping_;
};

} // namespace subreg

#endif // SUBREG_BUILTINS_HPP_
