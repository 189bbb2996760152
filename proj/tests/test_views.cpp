#include <doctest.h>

#include "subreg/builtins.hpp"
#include "subreg/views.hpp"
#include "testutil.hpp"

using namespace subreg;
using test::alphabet;
using test::repeated;
using test::str;
using test::sym;

namespace {

const FunctionHandle& handle_of(const std::string& name) {
    static std::map<std::string, FunctionHandle> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
        it = cache.emplace(name, FunctionHandle::from_machine(builtin(name))).first;
    }
    return it->second;
}

/// Bounded-enumeration oracle for the action alphabet: collect the f-top
/// increments over every prefix string up to the bound.
std::set<Action> enumerate_actions(const FunctionHandle& handle, std::size_t max_z) {
    std::set<Action> actions;
    for (const Str& z : all_strings(handle.input_alphabet(), max_z)) {
        Str base = handle.f_top(z);
        for (const Symbol& s : handle.input_alphabet()) {
            actions.insert(Action{s, handle.f_top(z + s).drop_prefix(base)});
        }
    }
    return actions;
}

} // namespace

TEST_CASE("f-top is the emitted output of the canonical run") {
    const FunctionHandle& rs = handle_of("syncope");
    CHECK(rs.f_top(repeated("V", 4)) == repeated("V", 2));
    CHECK(rs.f_top(Str{}) == Str{});

    const FunctionHandle& appender = handle_of("nononward-tssl");
    CHECK(appender.f_top(str("a b")) == str("a b"));

    // Cross-check against the lcp-over-continuations oracle.
    for (const std::string& name : builtin_names()) {
        const FunctionHandle& handle = handle_of(name);
        for (const Str& x : all_strings(handle.input_alphabet(), 5)) {
            CHECK(handle.f_top(x) == test::bounded_f_top(handle.source(), x, 4));
        }
    }
}

TEST_CASE("translations split the transduction") {
    const FunctionHandle& rs = handle_of("syncope");
    CHECK(rs.translation_apply(repeated("V", 4), str("V")) == Str{});
    CHECK(rs.translation_apply(repeated("V", 5), str("V")) == str("V"));

    const FunctionHandle& appender = handle_of("nononward-tssl");
    CHECK(appender.translation_apply(str("b"), Str{}) == str("b"));
    CHECK(appender.translation_apply(str("a"), Str{}) == str("a"));

    // Decomposition law: f(xy) = f_top(x) + translation(x, y).
    for (const std::string& name : builtin_names()) {
        const FunctionHandle& handle = handle_of(name);
        for (const Str& x : all_strings(handle.input_alphabet(), 4)) {
            for (const Str& y : all_strings(handle.input_alphabet(), 4)) {
                CHECK(handle.apply(x + y) == handle.f_top(x) + handle.translation_apply(x, y));
            }
        }
    }
}

TEST_CASE("prefix monotonicity of f-top") {
    for (const std::string& name : builtin_names()) {
        const FunctionHandle& handle = handle_of(name);
        for (const Str& x : all_strings(handle.input_alphabet(), 8)) {
            for (const Symbol& s : handle.input_alphabet()) {
                CHECK(handle.f_top(x).is_prefix_of(handle.f_top(x + s)));
            }
        }
    }
}

TEST_CASE("runs are increment histories") {
    const FunctionHandle& crowding = handle_of("tiosl-not-tssl");
    CHECK(crowding.run_of(str("b a")).to_string() == "b:b a:");
    CHECK(crowding.run_of(Str{}).empty());

    const FunctionHandle& appender = handle_of("nononward-tssl");
    CHECK(appender.run_of(str("b a a a")).to_string() == "b:b a:a a:a a:a");

    // Input projection recovers the input; output projection is f-top.
    for (const std::string& name : builtin_names()) {
        const FunctionHandle& handle = handle_of(name);
        for (const Str& x : all_strings(handle.input_alphabet(), 6)) {
            ActionStr run = handle.run_of(x);
            CHECK(run.input_projection() == x);
            CHECK(run.output_projection() == handle.f_top(x));
        }
    }
}

TEST_CASE("action alphabets match the bounded enumeration") {
    auto tokens = [](const std::set<Action>& actions) {
        std::vector<std::string> out;
        for (const Action& a : actions) {
            out.push_back(a.to_symbol().token());
        }
        return out;
    };
    CHECK(tokens(handle_of("syncope").actions()) == std::vector<std::string>{"C:C", "V:", "V:V"});
    CHECK(tokens(handle_of("nononward-tssl").actions()) ==
          std::vector<std::string>{"a:a", "b:b"});
    CHECK(tokens(handle_of("reduction").actions()) ==
          std::vector<std::string>{"C:C", "V:@", "V:V"});

    for (const std::string& name : builtin_names()) {
        const FunctionHandle& handle = handle_of(name);
        CHECK(handle.actions() == enumerate_actions(handle, 6));
    }

    // Identity over a single symbol has the single copying action.
    Sfst::Builder b(alphabet("a"), alphabet("a"));
    StateIdx q = b.add_state("q0");
    b.set_start(q);
    b.set_final(q, Str{});
    b.set_transition(q, sym("a"), q, str("a"));
    FunctionHandle identity = FunctionHandle::from_machine(std::move(b).build());
    CHECK(tokens(identity.actions()) == std::vector<std::string>{"a:a"});
}

TEST_CASE("equal canonical states share translations") {
    for (const std::string& name : builtin_names()) {
        const FunctionHandle& handle = handle_of(name);
        std::map<StateIdx, Str> first_access;
        for (const Str& x : all_strings(handle.input_alphabet(), 5)) {
            StateIdx q = run_state(handle.canon(), x);
            auto [it, inserted] = first_access.emplace(q, x);
            if (inserted) {
                continue;
            }
            for (const Str& y : all_strings(handle.input_alphabet(), 4)) {
                CHECK(handle.translation_apply(it->second, y) == handle.translation_apply(x, y));
            }
        }
    }
}

TEST_CASE("formula handles answer by bounded enumeration") {
    FunctionHandle rs_formula =
        FunctionHandle::from_formula(rs_direct, alphabet("C V"), alphabet("C V"), 4);
    CHECK(!rs_formula.exact());
    CHECK_THROWS_AS(rs_formula.canon(), Error);
    CHECK_THROWS_AS(rs_formula.source(), Error);

    const FunctionHandle& rs = handle_of("syncope");
    for (const Str& x : all_strings(alphabet("C V"), 5)) {
        CHECK(rs_formula.apply(x) == rs.apply(x));
        CHECK(rs_formula.f_top(x) == rs.f_top(x));
    }
    CHECK(rs_formula.run_of(str("V V")).to_string() == "V: V:V");
    CHECK(rs_formula.actions() == rs.actions());
    CHECK_THROWS_AS(rs_formula.apply(str("x")), Error);
}

TEST_CASE("functions with a shared output prefix stay exact") {
    // f(a^n) = b for every n: the canonical machine can only emit b at the
    // end, yet f-top of every input is b.
    Sfst::Builder b(alphabet("a"), alphabet("b"));
    StateIdx q = b.add_state("q0");
    b.set_start(q);
    b.set_final(q, str("b"));
    b.set_transition(q, sym("a"), q, Str{});
    FunctionHandle constant = FunctionHandle::from_machine(std::move(b).build());

    CHECK(constant.initial_emission() == str("b"));
    CHECK(constant.f_top(Str{}) == str("b"));
    CHECK(constant.f_top(str("a a")) == str("b"));
    CHECK(constant.run_of(str("a a")).to_string() == "a: a:");
    auto actions = constant.actions();
    REQUIRE(actions.size() == 1);
    CHECK(actions.begin()->to_symbol().token() == "a:");
    CHECK(constant.translation_apply(str("a"), str("a")) == Str{});
}
