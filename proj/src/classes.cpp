#include "subreg/classes.hpp"

#include <deque>
#include <map>
#include <tuple>

namespace subreg {

namespace {

std::set<Symbol> joint_alphabet(const FunctionHandle& handle) {
    std::set<Symbol> joint = handle.input_alphabet();
    joint.insert(handle.output_alphabet().begin(), handle.output_alphabet().end());
    return joint;
}

void require_exact(const FunctionHandle& handle) {
    if (!handle.exact()) {
        raise(ErrorCode::ExactUnsupported, "exact deciders need a machine-backed handle");
    }
}

void require_tier_alphabet(const Tier& tier, const std::set<Symbol>& expected, const char* what) {
    if (tier.alphabet() != expected) {
        raise(ErrorCode::AlphabetMismatch, std::string("tier alphabet must equal the ") + what);
    }
}

void require_locality(std::size_t value, const char* name) {
    if (value == 0) {
        raise(ErrorCode::ParseError, std::string(name) + " locality must be at least 1");
    }
}

Str single(const Symbol& s) {
    return Str{s};
}

/// Generic product exploration: walks canonical states alongside tiered
/// suffix windows and reports the first window collision between distinct
/// canonical states. `Window` must be totally ordered.
template <typename Window, typename Extend>
Verdict explore_product(const FunctionHandle& handle, Window initial, Extend&& extend) {
    const Sfst& canon = handle.canon();
    struct Owner {
        StateIdx state;
        Str access;
    };
    std::map<Window, Owner> owners;
    std::set<std::pair<StateIdx, Window>> visited;
    std::deque<std::tuple<StateIdx, Window, Str>> queue;

    auto visit = [&](StateIdx state, const Window& window, const Str& access) -> std::optional<Witness> {
        auto it = owners.find(window);
        if (it == owners.end()) {
            owners.emplace(window, Owner{state, access});
            return std::nullopt;
        }
        if (it->second.state == state) {
            return std::nullopt;
        }
        return Witness{it->second.access, access,
                       distinguishing_continuation(handle, it->second.state, state)};
    };

    queue.emplace_back(canon.start(), initial, Str{});
    visited.insert({canon.start(), initial});
    if (auto witness = visit(canon.start(), initial, Str{})) {
        return Verdict{false, std::move(witness)};
    }
    while (!queue.empty()) {
        auto [state, window, access] = queue.front();
        queue.pop_front();
        for (const Symbol& s : canon.input_alphabet()) {
            auto [action, target] = handle.canon_step(state, s);
            Window next = extend(window, s, action);
            Str next_access = access + s;
            if (!visited.insert({target, next}).second) {
                continue;
            }
            if (auto witness = visit(target, next, next_access)) {
                return Verdict{false, std::move(witness)};
            }
            queue.emplace_back(target, std::move(next), std::move(next_access));
        }
    }
    return Verdict{true, std::nullopt};
}

} // namespace

Verdict check_tiosl(const FunctionHandle& handle, LocalityParams params, const Tier& tier) {
    require_exact(handle);
    require_locality(params.input_locality, "input");
    require_locality(params.output_locality, "output");
    require_tier_alphabet(tier, joint_alphabet(handle), "joint input/output alphabet");
    const std::size_t iw = params.input_locality - 1;
    const std::size_t ow = params.output_locality - 1;

    using Window = std::pair<Str, Str>;
    Window initial{ksuffix(Str{}, iw),
                   extend_window(ksuffix(Str{}, ow), tier.apply(handle.initial_emission()), ow)};
    return explore_product(handle, std::move(initial),
                           [&](const Window& window, const Symbol& s, const Action& action) {
                               return Window{
                                   extend_window(window.first, tier.apply(single(s)), iw),
                                   extend_window(window.second, tier.apply(action.output), ow)};
                           });
}

Verdict check_tssl(const FunctionHandle& handle, std::size_t k, const Tier& tier) {
    require_exact(handle);
    require_locality(k, "action");
    require_tier_alphabet(tier, action_symbols(handle.actions()), "action alphabet");
    const std::size_t kw = k - 1;

    return explore_product(handle, ksuffix(Str{}, kw),
                           [&](const Str& window, const Symbol&, const Action& action) {
                               return extend_window(window, tier.apply(single(action.to_symbol())), kw);
                           });
}

namespace {

/// Bounded f-top: the lcp of outputs over continuations up to the horizon.
Str bounded_f_top(const FunctionHandle& handle, const Str& x,
                  const std::vector<Str>& continuations) {
    std::vector<Str> outputs;
    outputs.reserve(continuations.size());
    for (const Str& y : continuations) {
        outputs.push_back(handle.apply(x + y));
    }
    return lcp(outputs);
}

/// Shared scaffolding of the enumeration oracles: groups every string up to
/// the bound by its tiered profile and compares translations within a group
/// against the group's first member.
template <typename Profile>
Verdict brute_explore(const FunctionHandle& handle, std::size_t max_len, std::size_t horizon,
                      Profile&& profile_of) {
    const std::vector<Str> inputs = all_strings(handle.input_alphabet(), max_len);
    const std::vector<Str> continuations =
        all_strings(handle.input_alphabet(), std::max(max_len, horizon));

    std::vector<Str> tops;
    tops.reserve(inputs.size());
    for (const Str& w : inputs) {
        tops.push_back(bounded_f_top(handle, w, continuations));
    }

    using ProfileKey = decltype(profile_of(Str{}, Str{}));
    std::map<ProfileKey, std::size_t> group_head;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        auto [it, inserted] = group_head.emplace(profile_of(inputs[i], tops[i]), i);
        if (inserted) {
            continue;
        }
        const std::size_t head = it->second;
        for (const Str& y : inputs) {
            Str lhs = handle.apply(inputs[head] + y).drop_prefix(tops[head]);
            Str rhs = handle.apply(inputs[i] + y).drop_prefix(tops[i]);
            if (lhs != rhs) {
                return Verdict{false, Witness{inputs[head], inputs[i], y}};
            }
        }
    }
    return Verdict{true, std::nullopt};
}

/// The bounded run of f on x: per-symbol increments of the bounded f-top.
ActionStr bounded_run(const FunctionHandle& handle, const Str& x,
                      const std::vector<Str>& continuations) {
    ActionStr run;
    Str previous = bounded_f_top(handle, Str{}, continuations);
    Str prefix;
    for (const Symbol& s : x) {
        prefix.push_back(s);
        Str current = bounded_f_top(handle, prefix, continuations);
        run.push_back(Action{s, current.drop_prefix(previous)});
        previous = std::move(current);
    }
    return run;
}

} // namespace

Verdict brute_check_tiosl(const FunctionHandle& handle, LocalityParams params, const Tier& tier,
                          std::size_t max_len, std::size_t horizon) {
    require_locality(params.input_locality, "input");
    require_locality(params.output_locality, "output");
    require_tier_alphabet(tier, joint_alphabet(handle), "joint input/output alphabet");
    const std::size_t iw = params.input_locality - 1;
    const std::size_t ow = params.output_locality - 1;
    return brute_explore(handle, max_len, horizon, [&](const Str& w, const Str& top) {
        return std::make_pair(ksuffix(tier.apply(w), iw), ksuffix(tier.apply(top), ow));
    });
}

Verdict brute_check_tssl(const FunctionHandle& handle, std::size_t k, const Tier& tier,
                         std::size_t max_len, std::size_t horizon) {
    require_locality(k, "action");
    const std::vector<Str> continuations =
        all_strings(handle.input_alphabet(), std::max(max_len, horizon));
    return brute_explore(handle, max_len, horizon, [&](const Str& w, const Str&) {
        Str history = bounded_run(handle, w, continuations).to_str();
        for (const Symbol& a : history) {
            if (tier.alphabet().count(a) == 0) {
                raise(ErrorCode::AlphabetMismatch,
                      "action '" + a.token() + "' is outside the tier alphabet");
            }
        }
        return ksuffix(tier.apply(history), k - 1);
    });
}

namespace {

StateName window_state_name(const Str& tuple, std::size_t index) {
    try {
        return StateName::sync(tuple);
    } catch (const Error&) {
        return StateName::opaque("s" + std::to_string(index));
    }
}

StateName window_state_name(const std::pair<Str, Str>& tuple, std::size_t index) {
    try {
        return StateName::io(tuple.first, tuple.second);
    } catch (const Error&) {
        return StateName::opaque("s" + std::to_string(index));
    }
}

/// Canonical-machine construction, shared between the two window notions.
/// `WindowOf` seeds the start window, `Step` maps (window, symbol, action) to
/// (target window, emitted output).
template <typename Window, typename Step>
Sfst build_canonical(const FunctionHandle& handle, Window start_window, Step&& step,
                     const std::vector<Window>& full_set, const CanonicalOptions& options) {
    require_exact(handle);
    const Sfst& canon = handle.canon();

    struct Rep {
        StateIdx canon_state;
        Str access;
    };
    std::map<Window, Rep> reps;
    std::vector<Window> order{start_window};
    std::map<std::pair<Window, Symbol>, std::pair<Window, Str>> transitions;
    reps.emplace(start_window, Rep{canon.start(), Str{}});

    for (std::size_t next = 0; next < order.size(); ++next) {
        const Window window = order[next];
        const Rep rep = reps.at(window);
        for (const Symbol& s : canon.input_alphabet()) {
            auto [action, canon_target] = handle.canon_step(rep.canon_state, s);
            auto [target_window, emitted] = step(window, s, action, rep.canon_state);
            if (target_window == start_window && !handle.initial_emission().empty()) {
                raise(ErrorCode::ShapeUnverifiable,
                      "the image's shared prefix cannot be re-emitted by the canonical "
                      "state graph (the start window is re-entered)");
            }
            transitions.emplace(std::make_pair(window, s), std::make_pair(target_window, emitted));
            auto it = reps.find(target_window);
            if (it == reps.end()) {
                reps.emplace(target_window, Rep{canon_target, rep.access + s});
                order.push_back(target_window);
            } else if (it->second.canon_state != canon_target) {
                Witness witness{it->second.access, rep.access + s,
                                distinguishing_continuation(handle, it->second.canon_state,
                                                            canon_target)};
                std::string message = "two strings share a window but translate differently "
                                      "(witnesses '" +
                                      witness.w.to_string() + "' and '" + witness.x.to_string() +
                                      "')";
                throw NotInClassError(std::move(witness), message);
            }
        }
    }

    if (options.full_state_set) {
        for (const Window& window : full_set) {
            if (reps.find(window) == reps.end()) {
                order.push_back(window);
            }
        }
    }

    Sfst::Builder builder(handle.input_alphabet(), handle.output_alphabet());
    std::map<Window, StateIdx> index_of;
    for (std::size_t i = 0; i < order.size(); ++i) {
        index_of.emplace(order[i], builder.add_state(window_state_name(order[i], i)));
    }
    builder.set_start(index_of.at(start_window));
    for (const Window& window : order) {
        StateIdx q = index_of.at(window);
        auto rep = reps.find(window);
        if (rep != reps.end()) {
            builder.set_final(q, window == start_window
                                     ? handle.apply(Str{})
                                     : handle.state_final(rep->second.canon_state));
            for (const Symbol& s : canon.input_alphabet()) {
                const auto& [target_window, emitted] = transitions.at({window, s});
                builder.set_transition(q, s, index_of.at(target_window), emitted);
            }
        } else {
            // Unreached window, materialized on request: follow the window
            // update rule with the least available action per input symbol.
            builder.set_final(q, Str{});
            for (const Symbol& s : canon.input_alphabet()) {
                Action least{s, Str{}};
                bool found = false;
                for (const Action& a : handle.actions()) {
                    if (a.input == s) {
                        least = a;
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    raise(ErrorCode::InternalError, "no action for input symbol " + s.token());
                }
                auto [target_window, emitted] = step(window, s, least, canon.start());
                auto target = index_of.find(target_window);
                if (target == index_of.end()) {
                    raise(ErrorCode::InternalError, "window update left the full state set");
                }
                builder.set_transition(q, s, target->second, least.output);
            }
        }
    }
    return std::move(builder).build();
}

std::vector<Str> full_sync_windows(const std::set<Symbol>& actions, std::size_t width) {
    std::vector<Str> windows{Str{}};
    std::vector<Symbol> components{Symbol::boundary()};
    components.insert(components.end(), actions.begin(), actions.end());
    for (std::size_t pos = 0; pos < width; ++pos) {
        std::vector<Str> next;
        next.reserve(windows.size() * components.size());
        for (const Str& prefix : windows) {
            for (const Symbol& c : components) {
                next.push_back(prefix + c);
            }
        }
        windows = std::move(next);
    }
    return windows;
}

} // namespace

Sfst build_canonical_tssl(const FunctionHandle& handle, std::size_t k, const Tier& tier,
                          CanonicalOptions options) {
    require_exact(handle);
    require_locality(k, "action");
    require_tier_alphabet(tier, action_symbols(handle.actions()), "action alphabet");
    const std::size_t kw = k - 1;

    auto step = [&](const Str& window, const Symbol&, const Action& action, StateIdx source) {
        Str target = extend_window(window, tier.apply(single(action.to_symbol())), kw);
        Str emitted = source == handle.canon().start() ? handle.initial_emission() + action.output
                                                       : action.output;
        return std::make_pair(std::move(target), std::move(emitted));
    };
    std::vector<Str> full_set;
    if (options.full_state_set) {
        full_set = full_sync_windows(tier.alphabet(), kw);
    }
    return build_canonical(handle, ksuffix(Str{}, kw), step, full_set, options);
}

Sfst build_canonical_tiosl(const FunctionHandle& handle, LocalityParams params, const Tier& tier,
                           CanonicalOptions options) {
    require_exact(handle);
    require_locality(params.input_locality, "input");
    require_locality(params.output_locality, "output");
    require_tier_alphabet(tier, joint_alphabet(handle), "joint input/output alphabet");
    const std::size_t iw = params.input_locality - 1;
    const std::size_t ow = params.output_locality - 1;

    using Window = std::pair<Str, Str>;
    Window start{ksuffix(Str{}, iw),
                 extend_window(ksuffix(Str{}, ow), tier.apply(handle.initial_emission()), ow)};
    auto step = [&](const Window& window, const Symbol& s, const Action& action, StateIdx source) {
        Window target{extend_window(window.first, tier.apply(single(s)), iw),
                      extend_window(window.second, tier.apply(action.output), ow)};
        Str emitted = source == handle.canon().start() ? handle.initial_emission() + action.output
                                                       : action.output;
        return std::make_pair(std::move(target), std::move(emitted));
    };

    std::vector<Window> full_set;
    if (options.full_state_set) {
        std::set<Symbol> inputs;
        std::set<Symbol> outputs;
        for (const Symbol& s : tier.alphabet()) {
            if (handle.input_alphabet().count(s) > 0) {
                inputs.insert(s);
            }
            if (handle.output_alphabet().count(s) > 0) {
                outputs.insert(s);
            }
        }
        for (const Str& in_win : full_sync_windows(inputs, iw)) {
            for (const Str& out_win : full_sync_windows(outputs, ow)) {
                full_set.emplace_back(in_win, out_win);
            }
        }
    }
    return build_canonical(handle, std::move(start), step, full_set, options);
}

namespace {

bool components_valid(const Str& tuple, const std::set<Symbol>& allowed) {
    for (const Symbol& c : tuple) {
        if (!c.is_boundary() && allowed.count(c) == 0) {
            return false;
        }
    }
    return true;
}

} // namespace

bool shape_check_tssl(const Sfst& machine, std::size_t k, const Tier& tier) {
    require_locality(k, "action");
    require_tier_alphabet(tier, action_symbols(actions_of_machine(machine)),
                          "machine action alphabet");
    const std::size_t kw = k - 1;

    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        if (!machine.state_name(q).sync_tuple.has_value()) {
            raise(ErrorCode::ShapeUnverifiable,
                  "state '" + machine.state_name(q).text + "' has no window structure");
        }
    }
    const Str& start_tuple = *machine.state_name(machine.start()).sync_tuple;
    if (start_tuple != ksuffix(Str{}, kw)) {
        return false;
    }
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        const Str& tuple = *machine.state_name(q).sync_tuple;
        if (tuple.size() != kw || !components_valid(tuple, tier.alphabet())) {
            return false;
        }
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            Symbol action = Action{symbol, t.output}.to_symbol();
            Str expected = extend_window(tuple, tier.apply(single(action)), kw);
            if (*machine.state_name(t.target).sync_tuple != expected) {
                return false;
            }
        }
    }
    return true;
}

bool shape_check_tiosl(const Sfst& machine, LocalityParams params, const Tier& tier) {
    require_locality(params.input_locality, "input");
    require_locality(params.output_locality, "output");
    std::set<Symbol> joint = machine.input_alphabet();
    joint.insert(machine.output_alphabet().begin(), machine.output_alphabet().end());
    require_tier_alphabet(tier, joint, "machine joint alphabet");
    const std::size_t iw = params.input_locality - 1;
    const std::size_t ow = params.output_locality - 1;

    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        if (!machine.state_name(q).io_tuple.has_value()) {
            raise(ErrorCode::ShapeUnverifiable,
                  "state '" + machine.state_name(q).text + "' has no window structure");
        }
    }
    const auto& start_tuple = *machine.state_name(machine.start()).io_tuple;
    if (start_tuple.first != ksuffix(Str{}, iw) || start_tuple.second != ksuffix(Str{}, ow)) {
        return false;
    }
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        const auto& tuple = *machine.state_name(q).io_tuple;
        if (tuple.first.size() != iw || tuple.second.size() != ow ||
            !components_valid(tuple.first, machine.input_alphabet()) ||
            !components_valid(tuple.second, machine.output_alphabet())) {
            return false;
        }
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            std::pair<Str, Str> expected{extend_window(tuple.first, tier.apply(single(symbol)), iw),
                                         extend_window(tuple.second, tier.apply(t.output), ow)};
            if (*machine.state_name(t.target).io_tuple != expected) {
                return false;
            }
        }
    }
    return true;
}

Tier lift_tier_input(const Tier& tier, const std::set<Action>& actions) {
    std::set<Symbol> on;
    for (const Action& a : actions) {
        if (tier.is_on(a.input)) {
            on.insert(a.to_symbol());
        }
    }
    return Tier(action_symbols(actions), std::move(on));
}

Tier lift_tier_output(const Tier& tier, const std::set<Action>& actions) {
    std::set<Symbol> on;
    for (const Action& a : actions) {
        for (const Symbol& s : a.output) {
            if (tier.is_on(s)) {
                on.insert(a.to_symbol());
                break;
            }
        }
    }
    return Tier(action_symbols(actions), std::move(on));
}

bool SearchReport::any_member() const {
    for (const SearchEntry& entry : entries) {
        if (entry.verdict.member) {
            return true;
        }
    }
    return false;
}

std::vector<const SearchEntry*> SearchReport::members() const {
    std::vector<const SearchEntry*> out;
    for (const SearchEntry& entry : entries) {
        if (entry.verdict.member) {
            out.push_back(&entry);
        }
    }
    return out;
}

namespace {

std::vector<Tier> all_tiers(const std::set<Symbol>& alphabet, std::vector<std::uint32_t>& masks) {
    if (alphabet.size() > 16) {
        raise(ErrorCode::SearchTooLarge,
              "tier search over " + std::to_string(alphabet.size()) + " symbols");
    }
    const std::vector<Symbol> ordered(alphabet.begin(), alphabet.end());
    std::vector<Tier> tiers;
    const std::uint32_t limit = 1u << ordered.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        std::set<Symbol> on;
        for (std::size_t bit = 0; bit < ordered.size(); ++bit) {
            if (mask & (1u << bit)) {
                on.insert(ordered[bit]);
            }
        }
        tiers.emplace_back(alphabet, std::move(on));
        masks.push_back(mask);
    }
    return tiers;
}

} // namespace

SearchReport search_tiers_tiosl(const FunctionHandle& handle, std::size_t max_input,
                                std::size_t max_output) {
    SearchReport report;
    const std::set<Symbol> alphabet = joint_alphabet(handle);
    report.alphabet.assign(alphabet.begin(), alphabet.end());
    std::vector<std::uint32_t> masks;
    std::vector<Tier> tiers = all_tiers(alphabet, masks);
    for (std::size_t t = 0; t < tiers.size(); ++t) {
        for (std::size_t i = 1; i <= max_input; ++i) {
            for (std::size_t j = 1; j <= max_output; ++j) {
                SearchEntry entry;
                entry.tier_mask = masks[t];
                entry.on_tier.assign(tiers[t].on_tier().begin(), tiers[t].on_tier().end());
                entry.params = LocalityParams{i, j};
                entry.verdict = check_tiosl(handle, entry.params, tiers[t]);
                report.entries.push_back(std::move(entry));
            }
        }
    }
    return report;
}

SearchReport search_tiers_tssl(const FunctionHandle& handle, std::size_t max_k) {
    SearchReport report;
    const std::set<Symbol> alphabet = action_symbols(handle.actions());
    report.alphabet.assign(alphabet.begin(), alphabet.end());
    std::vector<std::uint32_t> masks;
    std::vector<Tier> tiers = all_tiers(alphabet, masks);
    for (std::size_t t = 0; t < tiers.size(); ++t) {
        for (std::size_t k = 1; k <= max_k; ++k) {
            SearchEntry entry;
            entry.tier_mask = masks[t];
            entry.on_tier.assign(tiers[t].on_tier().begin(), tiers[t].on_tier().end());
            entry.k = k;
            entry.verdict = check_tssl(handle, k, tiers[t]);
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

} // namespace subreg
