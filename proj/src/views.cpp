#include "subreg/views.hpp"

#include <deque>
#include <map>

namespace subreg {

std::vector<Str> all_strings(const std::set<Symbol>& alphabet, std::size_t max_len) {
    std::vector<Str> out{Str{}};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (const Symbol& s : alphabet) {
                out.push_back(out[i] + s);
            }
        }
        level_begin = level_end;
    }
    return out;
}

FunctionHandle FunctionHandle::from_machine(Sfst machine, std::size_t verify_length) {
    FunctionHandle handle;
    handle.input_alphabet_ = machine.input_alphabet();
    handle.output_alphabet_ = machine.output_alphabet();
    handle.canon_ = minimize(machine);
    handle.source_ = std::move(machine);
    handle.future_ = future_lcp(*handle.canon_);
    handle.initial_emission_ = handle.future_[handle.canon_->start()];
    for (const Str& x : all_strings(handle.input_alphabet_, verify_length)) {
        if (transduce(*handle.source_, x) != transduce(*handle.canon_, x)) {
            raise(ErrorCode::InternalError,
                  "canonicalization changed the function on input '" + x.to_string() + "'");
        }
    }
    return handle;
}

FunctionHandle FunctionHandle::from_formula(Formula formula, std::set<Symbol> input_alphabet,
                                            std::set<Symbol> output_alphabet, std::size_t horizon) {
    FunctionHandle handle;
    handle.formula_ = std::move(formula);
    handle.input_alphabet_ = std::move(input_alphabet);
    handle.output_alphabet_ = std::move(output_alphabet);
    handle.horizon_ = horizon;
    handle.initial_emission_ = handle.f_top(Str{});
    return handle;
}

const Sfst& FunctionHandle::source() const {
    if (!source_.has_value()) {
        raise(ErrorCode::ExactUnsupported, "formula-backed handle has no machine");
    }
    return *source_;
}

const Sfst& FunctionHandle::canon() const {
    if (!canon_.has_value()) {
        raise(ErrorCode::ExactUnsupported, "formula-backed handle has no canonical machine");
    }
    return *canon_;
}

Str FunctionHandle::apply(const Str& x) const {
    if (canon_.has_value()) {
        return transduce(*canon_, x);
    }
    for (const Symbol& s : x) {
        if (input_alphabet_.count(s) == 0) {
            raise(ErrorCode::UnknownSymbol, "symbol '" + s.token() + "' is not in the input alphabet");
        }
    }
    return formula_(x);
}

Str FunctionHandle::f_top(const Str& x) const {
    if (canon_.has_value()) {
        Str emitted;
        StateIdx q = canon_->start();
        for (const Symbol& s : x) {
            const Transition& t = canon_->transition(q, s);
            emitted.append(t.output);
            q = t.target;
        }
        return emitted + future_[q];
    }
    std::vector<Str> outputs;
    for (const Str& y : all_strings(input_alphabet_, horizon_)) {
        outputs.push_back(apply(x + y));
    }
    return lcp(outputs);
}

Str FunctionHandle::translation_apply(const Str& x, const Str& y) const {
    return apply(x + y).drop_prefix(f_top(x));
}

std::pair<Action, StateIdx> FunctionHandle::canon_step(StateIdx state, const Symbol& input) const {
    const Transition& t = canon().transition(state, input);
    Str increment = (t.output + future_[t.target]).drop_prefix(future_[state]);
    return {Action{input, std::move(increment)}, t.target};
}

Str FunctionHandle::state_final(StateIdx state) const {
    return canon().final_output(state).drop_prefix(future_[state]);
}

ActionStr FunctionHandle::run_of(const Str& x) const {
    ActionStr run;
    if (canon_.has_value()) {
        StateIdx q = canon_->start();
        for (const Symbol& s : x) {
            auto [action, target] = canon_step(q, s);
            run.push_back(std::move(action));
            q = target;
        }
        return run;
    }
    Str previous = initial_emission_;
    Str prefix;
    for (const Symbol& s : x) {
        prefix.push_back(s);
        Str current = f_top(prefix);
        run.push_back(Action{s, current.drop_prefix(previous)});
        previous = std::move(current);
    }
    return run;
}

const std::set<Action>& FunctionHandle::actions() const {
    if (!actions_.has_value()) {
        std::set<Action> actions;
        if (canon_.has_value()) {
            for (StateIdx q = 0; q < canon_->state_count(); ++q) {
                for (const auto& [symbol, t] : canon_->transitions_from(q)) {
                    actions.insert(canon_step(q, symbol).first);
                }
            }
        } else {
            for (const Str& z : all_strings(input_alphabet_, horizon_)) {
                for (const Action& a : run_of(z)) {
                    actions.insert(a);
                }
            }
        }
        actions_ = std::move(actions);
    }
    return *actions_;
}

Str distinguishing_continuation(const FunctionHandle& handle, StateIdx a, StateIdx b) {
    if (a == b) {
        raise(ErrorCode::InternalError, "cannot distinguish a state from itself");
    }
    const Sfst& canon = handle.canon();
    std::map<std::pair<StateIdx, StateIdx>, bool> seen;
    std::deque<std::pair<std::pair<StateIdx, StateIdx>, Str>> queue;
    queue.push_back({{a, b}, Str{}});
    seen[{a, b}] = true;
    while (!queue.empty()) {
        auto [pair, access] = queue.front();
        queue.pop_front();
        if (handle.state_final(pair.first) != handle.state_final(pair.second)) {
            return access;
        }
        for (const Symbol& s : canon.input_alphabet()) {
            auto [action1, target1] = handle.canon_step(pair.first, s);
            auto [action2, target2] = handle.canon_step(pair.second, s);
            if (action1.output != action2.output) {
                return access + s;
            }
            std::pair<StateIdx, StateIdx> next{target1, target2};
            if (next.first != next.second && !seen[next]) {
                seen[next] = true;
                queue.push_back({next, access + s});
            }
        }
    }
    raise(ErrorCode::InternalError, "distinct canonical states admit no distinguishing continuation");
}

} // namespace subreg
