#include "subreg/sfst.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace subreg {

namespace {

bool is_structure_clean(const std::string& token) {
    return token.find_first_of("(),|") == std::string::npos;
}

std::string join_components(const Str& tuple) {
    std::string out;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (!is_structure_clean(tuple[i].token())) {
            raise(ErrorCode::ReservedToken,
                  "structure delimiter inside state-name component: '" + tuple[i].token() + "'");
        }
        if (i > 0) {
            out += ',';
        }
        out += tuple[i].token();
    }
    return out;
}

std::vector<Symbol> split_components(const std::string& text, int line) {
    std::vector<Symbol> out;
    if (text.empty()) {
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string component = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (component.empty()) {
            raise(ErrorCode::ParseError,
                  "line " + std::to_string(line) + ": empty component in structured state name");
        }
        out.push_back(component == kBoundaryToken ? Symbol::boundary() : Symbol::unchecked(component));
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

} // namespace

StateName StateName::opaque(std::string text) {
    return StateName{std::move(text), std::nullopt, std::nullopt};
}

StateName StateName::sync(const Str& tuple) {
    StateName name;
    name.text = "(" + join_components(tuple) + ")";
    name.sync_tuple = tuple;
    return name;
}

StateName StateName::io(const Str& input_window, const Str& output_window) {
    StateName name;
    name.text = "(" + join_components(input_window) + "|" + join_components(output_window) + ")";
    name.io_tuple = std::make_pair(input_window, output_window);
    return name;
}

StateName StateName::parse(const std::string& token) {
    if (token.size() < 2 || token.front() != '(' || token.back() != ')') {
        return opaque(token);
    }
    std::string inner = token.substr(1, token.size() - 2);
    std::size_t bar = inner.find('|');
    if (bar == std::string::npos) {
        return sync(Str(split_components(inner, 0)));
    }
    Str in(split_components(inner.substr(0, bar), 0));
    Str out(split_components(inner.substr(bar + 1), 0));
    return io(in, out);
}

Sfst::Builder::Builder(std::set<Symbol> input_alphabet, std::set<Symbol> output_alphabet) {
    for (const auto* alphabet : {&input_alphabet, &output_alphabet}) {
        for (const Symbol& s : *alphabet) {
            if (s.is_boundary()) {
                raise(ErrorCode::ReservedToken, "machine alphabets may not contain the boundary token");
            }
        }
    }
    input_alphabet_ = std::move(input_alphabet);
    output_alphabet_ = std::move(output_alphabet);
}

StateIdx Sfst::Builder::add_state(StateName name) {
    if (name.text.empty()) {
        raise(ErrorCode::ParseError, "state names must be non-empty");
    }
    if (!used_names_.insert(name.text).second) {
        raise(ErrorCode::ParseError, "duplicate state name '" + name.text + "'");
    }
    names_.push_back(std::move(name));
    transitions_.emplace_back();
    finals_.emplace_back();
    return names_.size() - 1;
}

StateIdx Sfst::Builder::add_state(std::string opaque_name) {
    return add_state(StateName::opaque(std::move(opaque_name)));
}

void Sfst::Builder::set_start(StateIdx state) {
    start_ = state;
}

void Sfst::Builder::set_transition(StateIdx from, const Symbol& input, StateIdx to, Str output) {
    if (input_alphabet_.count(input) == 0) {
        raise(ErrorCode::UnknownSymbol, "transition symbol '" + input.token() + "' is not in the input alphabet");
    }
    for (const Symbol& s : output) {
        if (output_alphabet_.count(s) == 0) {
            raise(ErrorCode::UnknownSymbol, "output symbol '" + s.token() + "' is not in the output alphabet");
        }
    }
    auto [it, inserted] = transitions_[from].emplace(input, Transition{to, std::move(output)});
    if (!inserted) {
        raise(ErrorCode::ParseError, "duplicate transition for state '" + names_[from].text +
                                         "' on symbol '" + input.token() + "'");
    }
}

void Sfst::Builder::set_final(StateIdx state, Str output) {
    for (const Symbol& s : output) {
        if (output_alphabet_.count(s) == 0) {
            raise(ErrorCode::UnknownSymbol, "final output symbol '" + s.token() + "' is not in the output alphabet");
        }
    }
    if (finals_[state].has_value()) {
        raise(ErrorCode::ParseError, "duplicate final output for state '" + names_[state].text + "'");
    }
    finals_[state] = std::move(output);
}

Sfst Sfst::Builder::build() && {
    if (names_.empty()) {
        raise(ErrorCode::NotTotal, "a machine needs at least one state");
    }
    if (!start_.has_value()) {
        raise(ErrorCode::ParseError, "no start state declared");
    }
    Sfst machine;
    machine.names_ = std::move(names_);
    machine.input_alphabet_ = std::move(input_alphabet_);
    machine.output_alphabet_ = std::move(output_alphabet_);
    machine.start_ = *start_;
    machine.finals_.resize(finals_.size());
    for (StateIdx q = 0; q < finals_.size(); ++q) {
        if (!finals_[q].has_value()) {
            raise(ErrorCode::NotTotal, "state '" + machine.names_[q].text + "' has no final output row");
        }
        machine.finals_[q] = std::move(*finals_[q]);
        for (const Symbol& s : machine.input_alphabet_) {
            if (transitions_[q].count(s) == 0) {
                raise(ErrorCode::NotTotal, "state '" + machine.names_[q].text +
                                               "' has no transition on symbol '" + s.token() + "'");
            }
        }
    }
    machine.transitions_ = std::move(transitions_);
    return machine;
}

std::optional<StateIdx> Sfst::state_by_name(std::string_view text) const {
    for (StateIdx q = 0; q < names_.size(); ++q) {
        if (names_[q].text == text) {
            return q;
        }
    }
    return std::nullopt;
}

const Transition& Sfst::transition(StateIdx q, const Symbol& input) const {
    auto it = transitions_[q].find(input);
    if (it == transitions_[q].end()) {
        raise(ErrorCode::UnknownSymbol, "symbol '" + input.token() + "' is not in the input alphabet");
    }
    return it->second;
}

Str transduce(const Sfst& machine, const Str& input) {
    Str out;
    StateIdx q = machine.start();
    for (const Symbol& s : input) {
        const Transition& t = machine.transition(q, s);
        out.append(t.output);
        q = t.target;
    }
    out.append(machine.final_output(q));
    return out;
}

StateIdx run_state(const Sfst& machine, const Str& input) {
    StateIdx q = machine.start();
    for (const Symbol& s : input) {
        q = machine.transition(q, s).target;
    }
    return q;
}

ActionStr run_trace(const Sfst& machine, const Str& input) {
    ActionStr trace;
    StateIdx q = machine.start();
    for (const Symbol& s : input) {
        const Transition& t = machine.transition(q, s);
        trace.push_back(Action{s, t.output});
        q = t.target;
    }
    return trace;
}

std::set<Action> actions_of_machine(const Sfst& machine) {
    std::set<Action> actions;
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            actions.insert(Action{symbol, t.output});
        }
    }
    return actions;
}

std::optional<OnwardViolation> onward_violation(const Sfst& machine) {
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        if (q == machine.start()) {
            continue;
        }
        std::vector<Str> outputs;
        outputs.reserve(machine.transitions_from(q).size() + 1);
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            outputs.push_back(t.output);
        }
        outputs.push_back(machine.final_output(q));
        Str shared = lcp(outputs);
        if (!shared.empty()) {
            return OnwardViolation{q, std::move(shared)};
        }
    }
    return std::nullopt;
}

bool is_onward(const Sfst& machine) {
    return !onward_violation(machine).has_value();
}

namespace {

/// Greatest family of per-state prefixes that can be factored out of every
/// future output. The start state is held at the empty prefix when
/// `exempt_start` is set, matching the onwardness condition.
std::vector<Str> pushable_prefixes(const Sfst& machine, bool exempt_start) {
    std::vector<Str> p(machine.state_count());
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        if (exempt_start && q == machine.start()) {
            continue;
        }
        p[q] = machine.final_output(q);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateIdx q = 0; q < machine.state_count(); ++q) {
            if (exempt_start && q == machine.start()) {
                continue;
            }
            std::vector<Str> futures;
            futures.reserve(machine.transitions_from(q).size() + 1);
            futures.push_back(machine.final_output(q));
            for (const auto& [symbol, t] : machine.transitions_from(q)) {
                futures.push_back(t.output + p[t.target]);
            }
            Str next = lcp(futures);
            if (next != p[q]) {
                p[q] = std::move(next);
                changed = true;
            }
        }
    }
    return p;
}

Sfst rebuild_with_pushed(const Sfst& machine, const std::vector<Str>& p) {
    Sfst::Builder builder(machine.input_alphabet(), machine.output_alphabet());
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        builder.add_state(machine.state_name(q));
    }
    builder.set_start(machine.start());
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        builder.set_final(q, machine.final_output(q).drop_prefix(p[q]));
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            builder.set_transition(q, symbol, t.target, (t.output + p[t.target]).drop_prefix(p[q]));
        }
    }
    return std::move(builder).build();
}

} // namespace

Sfst make_onward(const Sfst& machine) {
    std::vector<Str> p = pushable_prefixes(machine, /*exempt_start=*/true);
    if (std::all_of(p.begin(), p.end(), [](const Str& s) { return s.empty(); })) {
        return machine;
    }
    return rebuild_with_pushed(machine, p);
}

std::vector<Str> future_lcp(const Sfst& machine) {
    return pushable_prefixes(machine, /*exempt_start=*/false);
}

Sfst trim(const Sfst& machine) {
    constexpr StateIdx kUnreached = static_cast<StateIdx>(-1);
    std::vector<StateIdx> remap(machine.state_count(), kUnreached);
    std::vector<StateIdx> order;
    std::deque<StateIdx> queue{machine.start()};
    remap[machine.start()] = 0;
    order.push_back(machine.start());
    while (!queue.empty()) {
        StateIdx q = queue.front();
        queue.pop_front();
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            if (remap[t.target] == kUnreached) {
                remap[t.target] = order.size();
                order.push_back(t.target);
                queue.push_back(t.target);
            }
        }
    }
    if (order.size() == machine.state_count()) {
        return machine;
    }
    Sfst::Builder builder(machine.input_alphabet(), machine.output_alphabet());
    for (StateIdx q : order) {
        builder.add_state(machine.state_name(q));
    }
    builder.set_start(0);
    for (StateIdx q : order) {
        builder.set_final(remap[q], machine.final_output(q));
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            builder.set_transition(remap[q], symbol, remap[t.target], t.output);
        }
    }
    return std::move(builder).build();
}

Sfst minimize(const Sfst& machine) {
    Sfst onward = trim(make_onward(machine));

    // Rebase every state on translation-accurate labels. After onwardization
    // the only state whose future outputs can still share a prefix is the
    // start (it is exempt from the onward condition: nothing can be emitted
    // before the first input symbol is read). When that shared prefix is
    // non-empty, Moore refinement over raw labels is not canonical — the
    // compensation can be split differently across presentations of the same
    // function — so a fresh delaying start carries the prefix and all other
    // labels become f-top increments.
    std::vector<Str> ell = future_lcp(onward);
    const Str delay = ell[onward.start()];
    if (!delay.empty()) {
        Sfst::Builder b(onward.input_alphabet(), onward.output_alphabet());
        for (StateIdx q = 0; q < onward.state_count(); ++q) {
            b.add_state("t" + std::to_string(q));
        }
        StateIdx fresh = b.add_state("t_start");
        b.set_start(fresh);
        for (StateIdx q = 0; q < onward.state_count(); ++q) {
            b.set_final(q, onward.final_output(q).drop_prefix(ell[q]));
            for (const auto& [symbol, t] : onward.transitions_from(q)) {
                b.set_transition(q, symbol, t.target,
                                 (t.output + ell[t.target]).drop_prefix(ell[q]));
            }
        }
        b.set_final(fresh, onward.final_output(onward.start()));
        for (const auto& [symbol, t] : onward.transitions_from(onward.start())) {
            b.set_transition(fresh, symbol, t.target, t.output + ell[t.target]);
        }
        onward = trim(std::move(b).build());
    }

    std::vector<std::size_t> block(onward.state_count());
    {
        std::map<Str, std::size_t> by_final;
        for (StateIdx q = 0; q < onward.state_count(); ++q) {
            auto [it, inserted] = by_final.emplace(onward.final_output(q), by_final.size());
            block[q] = it->second;
        }
    }
    while (true) {
        using Signature = std::pair<std::size_t, std::vector<std::pair<Str, std::size_t>>>;
        std::map<Signature, std::size_t> next_ids;
        std::vector<std::size_t> next(onward.state_count());
        for (StateIdx q = 0; q < onward.state_count(); ++q) {
            Signature sig{block[q], {}};
            for (const auto& [symbol, t] : onward.transitions_from(q)) {
                sig.second.emplace_back(t.output, block[t.target]);
            }
            auto [it, inserted] = next_ids.emplace(std::move(sig), next_ids.size());
            next[q] = it->second;
        }
        bool stable = next_ids.size() ==
                      static_cast<std::size_t>(1 + *std::max_element(block.begin(), block.end()));
        block = std::move(next);
        if (stable) {
            break;
        }
    }

    // Merge blocks, numbering them breadth-first from the start block.
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::size_t block_count = 1 + *std::max_element(block.begin(), block.end());
    std::vector<StateIdx> representative(block_count, 0);
    for (StateIdx q = onward.state_count(); q-- > 0;) {
        representative[block[q]] = q;
    }
    std::vector<std::size_t> bfs_id(block_count, kUnvisited);
    std::vector<std::size_t> order;
    std::deque<std::size_t> queue{block[onward.start()]};
    bfs_id[block[onward.start()]] = 0;
    order.push_back(block[onward.start()]);
    while (!queue.empty()) {
        std::size_t b = queue.front();
        queue.pop_front();
        for (const auto& [symbol, t] : onward.transitions_from(representative[b])) {
            std::size_t target = block[t.target];
            if (bfs_id[target] == kUnvisited) {
                bfs_id[target] = order.size();
                order.push_back(target);
                queue.push_back(target);
            }
        }
    }

    Sfst::Builder builder(onward.input_alphabet(), onward.output_alphabet());
    for (std::size_t i = 0; i < order.size(); ++i) {
        builder.add_state("q" + std::to_string(i));
    }
    builder.set_start(0);
    for (std::size_t b : order) {
        StateIdx rep = representative[b];
        builder.set_final(bfs_id[b], onward.final_output(rep));
        for (const auto& [symbol, t] : onward.transitions_from(rep)) {
            builder.set_transition(bfs_id[b], symbol, bfs_id[block[t.target]], t.output);
        }
    }
    return std::move(builder).build();
}

bool equivalent(const Sfst& a, const Sfst& b) {
    if (a.input_alphabet() != b.input_alphabet()) {
        raise(ErrorCode::AlphabetMismatch, "equivalence requires equal input alphabets");
    }
    Sfst ma = minimize(a);
    Sfst mb = minimize(b);
    if (ma.state_count() != mb.state_count()) {
        return false;
    }
    // minimize() numbers states breadth-first from the start, so isomorphism
    // reduces to an index-wise comparison.
    for (StateIdx q = 0; q < ma.state_count(); ++q) {
        if (ma.final_output(q) != mb.final_output(q)) {
            return false;
        }
        for (const Symbol& s : ma.input_alphabet()) {
            const Transition& ta = ma.transition(q, s);
            const Transition& tb = mb.transition(q, s);
            if (ta.output != tb.output || ta.target != tb.target) {
                return false;
            }
        }
    }
    return true;
}

namespace {

struct Row {
    int line;
    std::vector<std::string> tokens;
};

[[noreturn]] void parse_fail(int line, const std::string& message) {
    raise(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

Symbol row_symbol(const Row& row, const std::string& token) {
    try {
        return Symbol(token);
    } catch (const Error&) {
        parse_fail(row.line, "bad symbol token '" + token + "'");
    }
}

} // namespace

Sfst parse_sfst(std::string_view text) {
    std::vector<Row> rows;
    {
        std::istringstream in{std::string(text)};
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.resize(hash);
            }
            std::istringstream tokens(line);
            Row row{line_no, {}};
            std::string token;
            while (tokens >> token) {
                row.tokens.push_back(token);
            }
            if (!row.tokens.empty()) {
                rows.push_back(std::move(row));
            }
        }
    }

    std::set<Symbol> input_alphabet;
    std::set<Symbol> output_alphabet;
    std::vector<std::pair<int, StateName>> states;
    std::set<std::string> state_names;
    for (const Row& row : rows) {
        const std::string& directive = row.tokens[0];
        if (directive == "INPUT") {
            for (std::size_t i = 1; i < row.tokens.size(); ++i) {
                input_alphabet.insert(row_symbol(row, row.tokens[i]));
            }
        } else if (directive == "OUTPUT") {
            for (std::size_t i = 1; i < row.tokens.size(); ++i) {
                output_alphabet.insert(row_symbol(row, row.tokens[i]));
            }
        } else if (directive == "STATE") {
            for (std::size_t i = 1; i < row.tokens.size(); ++i) {
                StateName name = [&] {
                    try {
                        return StateName::parse(row.tokens[i]);
                    } catch (const Error&) {
                        parse_fail(row.line, "malformed structured state name '" + row.tokens[i] + "'");
                    }
                }();
                if (!state_names.insert(name.text).second) {
                    parse_fail(row.line, "duplicate state name '" + name.text + "'");
                }
                states.emplace_back(row.line, std::move(name));
            }
        } else if (directive != "START" && directive != "FINAL" && directive != "TRANS") {
            parse_fail(row.line, "unknown directive '" + directive + "'");
        }
    }

    Sfst::Builder builder(input_alphabet, output_alphabet);
    std::map<std::string, StateIdx> index_of;
    for (auto& [line, name] : states) {
        std::string text = name.text;
        index_of[text] = builder.add_state(std::move(name));
    }
    auto lookup_state = [&](const Row& row, const std::string& token) {
        auto it = index_of.find(token);
        if (it == index_of.end()) {
            parse_fail(row.line, "undeclared state '" + token + "'");
        }
        return it->second;
    };
    auto lookup_symbol = [&](const Row& row, const std::set<Symbol>& alphabet, const std::string& token,
                             const char* which) -> Symbol {
        Symbol s = Symbol::unchecked(token);
        if (alphabet.count(s) == 0) {
            raise(ErrorCode::UnknownSymbol, "line " + std::to_string(row.line) + ": undeclared " +
                                                which + " symbol '" + token + "'");
        }
        return s;
    };
    auto read_output = [&](const Row& row, std::size_t from) {
        Str out;
        for (std::size_t i = from; i < row.tokens.size(); ++i) {
            out.push_back(lookup_symbol(row, output_alphabet, row.tokens[i], "output"));
        }
        return out;
    };

    bool seen_start = false;
    for (const Row& row : rows) {
        const std::string& directive = row.tokens[0];
        if (directive == "START") {
            if (row.tokens.size() != 2) {
                parse_fail(row.line, "START expects exactly one state name");
            }
            if (seen_start) {
                parse_fail(row.line, "duplicate START row");
            }
            seen_start = true;
            builder.set_start(lookup_state(row, row.tokens[1]));
        } else if (directive == "FINAL") {
            if (row.tokens.size() < 3 || row.tokens[2] != ":") {
                parse_fail(row.line, "expected 'FINAL state : out-sym...'");
            }
            builder.set_final(lookup_state(row, row.tokens[1]), read_output(row, 3));
        } else if (directive == "TRANS") {
            if (row.tokens.size() < 6 || row.tokens[3] != "->" || row.tokens[5] != ":") {
                parse_fail(row.line, "expected 'TRANS state in-sym -> state : out-sym...'");
            }
            StateIdx from = lookup_state(row, row.tokens[1]);
            Symbol input = lookup_symbol(row, input_alphabet, row.tokens[2], "input");
            StateIdx to = lookup_state(row, row.tokens[4]);
            builder.set_transition(from, input, to, read_output(row, 6));
        }
    }
    if (!seen_start) {
        raise(ErrorCode::ParseError, "missing START row");
    }
    return std::move(builder).build();
}

std::string serialize(const Sfst& machine) {
    std::ostringstream out;
    auto emit_alphabet = [&](const char* directive, const std::set<Symbol>& alphabet) {
        out << directive;
        for (const Symbol& s : alphabet) {
            out << ' ' << s.token();
        }
        out << '\n';
    };
    emit_alphabet("INPUT", machine.input_alphabet());
    emit_alphabet("OUTPUT", machine.output_alphabet());
    out << "STATE";
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        out << ' ' << machine.state_name(q).text;
    }
    out << '\n';
    out << "START " << machine.state_name(machine.start()).text << '\n';
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        out << "FINAL " << machine.state_name(q).text << " :";
        for (const Symbol& s : machine.final_output(q)) {
            out << ' ' << s.token();
        }
        out << '\n';
    }
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            out << "TRANS " << machine.state_name(q).text << ' ' << symbol.token() << " -> "
                << machine.state_name(t.target).text << " :";
            for (const Symbol& s : t.output) {
                out << ' ' << s.token();
            }
            out << '\n';
        }
    }
    return out.str();
}

namespace {

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

std::string edge_label(const Symbol& input, const Str& output) {
    std::string label = input.token() + ":";
    for (std::size_t i = 0; i < output.size(); ++i) {
        if (i > 0) {
            label += ' ';
        }
        label += output[i].token();
    }
    return label;
}

} // namespace

std::string to_dot(const Sfst& machine) {
    std::ostringstream out;
    out << "digraph sfst {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        const std::string name = dot_escape(machine.state_name(q).text);
        out << "  \"" << name << "\" [";
        if (q == machine.start()) {
            out << "shape=doublecircle, ";
        }
        std::string label = name;
        if (!machine.final_output(q).empty()) {
            label += "\\n: " + dot_escape(machine.final_output(q).to_string());
        }
        out << "label=\"" << label << "\"];\n";
    }
    for (StateIdx q = 0; q < machine.state_count(); ++q) {
        for (const auto& [symbol, t] : machine.transitions_from(q)) {
            out << "  \"" << dot_escape(machine.state_name(q).text) << "\" -> \""
                << dot_escape(machine.state_name(t.target).text) << "\" [label=\""
                << dot_escape(edge_label(symbol, t.output)) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace subreg
