#ifndef SUBREG_TESTS_TESTUTIL_HPP_
#define SUBREG_TESTS_TESTUTIL_HPP_

#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string_view>

#include "subreg/classes.hpp"
#include "subreg/core.hpp"
#include "subreg/sfst.hpp"
#include "subreg/views.hpp"

namespace subreg::test {

Symbol sym(std::string_view token);
Str str(std::string_view tokens);
std::set<Symbol> alphabet(std::string_view tokens);
Str repeated(std::string_view token, std::size_t count);

/// String-by-string comparison of two machines on every input up to max_len.
bool exhaustively_equal(const Sfst& a, const Sfst& b, std::size_t max_len);
bool agrees_with(const Sfst& machine, const std::function<Str(const Str&)>& oracle,
                 std::size_t max_len);

/// Independent minimality oracle: the number of distinct translations of the
/// computed function, fingerprinted over continuations up to `depth` with
/// f-top approximated by bounded lcp. Exact for machines whose divergences
/// show within the depth; used only on such machines.
std::size_t distinct_translation_count(const Sfst& machine, std::size_t max_access,
                                       std::size_t depth);

/// Bounded f-top oracle: lcp of outputs over continuations up to `depth`.
Str bounded_f_top(const Sfst& machine, const Str& x, std::size_t depth);

struct RandomMachineOptions {
    std::size_t max_states = 4;
    std::size_t input_symbols = 2;
    std::size_t output_symbols = 2;
    std::size_t max_output_len = 2;
};

/// Arbitrary total machine with random transitions and outputs.
Sfst random_sfst(std::mt19937& rng, const RandomMachineOptions& options = {});

struct ShapedMachine {
    Sfst machine;
    Tier tier;
};

/// Random onward machine whose reachable states follow the window-update rule
/// for an input window of 2 (respectively an output window of 2) on a random
/// tier. Returns nullopt when the draw is not onward or its image shares a
/// common prefix; callers resample.
std::optional<ShapedMachine> random_input_local_shaped(std::mt19937& rng);
std::optional<ShapedMachine> random_output_local_shaped(std::mt19937& rng);

/// Replays a negative verdict's witness through the views layer: both
/// strings must carry equal tiered suffix windows yet translate differently
/// on the witness continuation.
bool witness_replays_tiosl(const FunctionHandle& handle, LocalityParams params, const Tier& tier,
                           const Witness& witness);
bool witness_replays_tssl(const FunctionHandle& handle, std::size_t k, const Tier& tier,
                          const Witness& witness);

} // namespace subreg::test

#endif // SUBREG_TESTS_TESTUTIL_HPP_
