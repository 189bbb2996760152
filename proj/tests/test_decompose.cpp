#include <doctest.h>

#include "subreg/builtins.hpp"
#include "subreg/classes.hpp"
#include "subreg/decompose.hpp"
#include "testutil.hpp"

using namespace subreg;
using test::alphabet;
using test::str;
using test::sym;

namespace {

Sfst identity_over_a() {
    Sfst::Builder b(alphabet("a"), alphabet("a"));
    StateIdx q = b.add_state("q0");
    b.set_start(q);
    b.set_final(q, Str{});
    b.set_transition(q, sym("a"), q, str("a"));
    return std::move(b).build();
}

} // namespace

TEST_CASE("homomorphism application") {
    Homomorphism eraser(std::map<Symbol, Str>{{Symbol::unchecked("q1|V"), str("V")},
                                              {Symbol::unchecked("SIGMA|"), Str{}}});
    Str tagged{Symbol::unchecked("q1|V"), Symbol::unchecked("SIGMA|")};
    CHECK(eraser.apply(tagged) == str("V"));
    CHECK(eraser.apply(Str{}) == Str{});
    CHECK_THROWS_AS(eraser.apply(str("V")), Error);

    // Homomorphism law over a simple eraser.
    Homomorphism schwa_eraser(
        std::map<Symbol, Str>{{sym("@"), Str{}}, {sym("C"), str("C")}, {sym("V"), str("V")}});
    for (const Str& x : all_strings(alphabet("C V @"), 3)) {
        for (const Str& y : all_strings(alphabet("C V @"), 3)) {
            CHECK(schwa_eraser.apply(x + y) == schwa_eraser.apply(x) + schwa_eraser.apply(y));
        }
    }
}

TEST_CASE("homomorphism text format round trips") {
    Homomorphism eraser(std::map<Symbol, Str>{{sym("@"), Str{}}, {sym("V"), str("V")}});
    Homomorphism reparsed = Homomorphism::parse(eraser.serialize());
    CHECK(reparsed.mapping() == eraser.mapping());
    CHECK_THROWS_AS(Homomorphism::parse("MAP x\n"), Error);
}

TEST_CASE("every machine factors through a state-tagging output-local step") {
    for (const std::string& name : builtin_names()) {
        const Sfst& machine = builtin(name);
        Decomposition parts = decompose(machine);

        for (const Str& x : all_strings(machine.input_alphabet(), 8)) {
            CHECK(parts.second.apply(transduce(parts.first, x)) == transduce(machine, x));
        }

        FunctionHandle tagger = FunctionHandle::from_machine(parts.first);
        std::set<Symbol> joint = tagger.input_alphabet();
        joint.insert(tagger.output_alphabet().begin(), tagger.output_alphabet().end());
        CHECK(check_tiosl(tagger, {1, 2}, Tier::full(joint)).member);
    }
}

TEST_CASE("decomposing the identity tags each step") {
    Decomposition parts = decompose(identity_over_a());
    CHECK(transduce(parts.first, str("a")).to_string() == "q0|a SIGMA|");
    for (const Str& x : all_strings(alphabet("a"), 6)) {
        CHECK(parts.second.apply(transduce(parts.first, x)) == x);
    }
}

TEST_CASE("pseudo-deletion equals syncope after erasure") {
    Homomorphism schwa_eraser(
        std::map<Symbol, Str>{{sym("@"), Str{}}, {sym("C"), str("C")}, {sym("V"), str("V")}});
    for (const Str& x : all_strings(alphabet("C V"), 10)) {
        CHECK(schwa_eraser.apply(reduction_direct(x)) == rs_direct(x));
    }
}
