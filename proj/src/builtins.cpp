#include "subreg/builtins.hpp"

#include <sstream>

namespace subreg {

namespace {

const Symbol kC = Symbol::unchecked("C");
const Symbol kV = Symbol::unchecked("V");
const Symbol kSchwa = Symbol::unchecked("@");

Str str_of(std::initializer_list<const char*> tokens) {
    Str out;
    for (const char* token : tokens) {
        out.push_back(Symbol::unchecked(token));
    }
    return out;
}

Sfst make_reduction() {
    Sfst::Builder b({kC, kV}, {kC, kV, kSchwa});
    StateIdx lb = b.add_state(StateName::io(Str{}, Str{Symbol::boundary()}));
    StateIdx schwa = b.add_state(StateName::io(Str{}, Str{kSchwa}));
    StateIdx v = b.add_state(StateName::io(Str{}, Str{kV}));
    b.set_start(lb);
    for (StateIdx q : {lb, schwa, v}) {
        b.set_final(q, Str{});
        b.set_transition(q, kC, q, Str{kC});
    }
    b.set_transition(lb, kV, schwa, Str{kSchwa});
    b.set_transition(schwa, kV, v, Str{kV});
    b.set_transition(v, kV, schwa, Str{kSchwa});
    return std::move(b).build();
}

Sfst make_syncope() {
    const Symbol delete_v = Action{kV, Str{}}.to_symbol();
    const Symbol keep_v = Action{kV, Str{kV}}.to_symbol();
    Sfst::Builder b({kC, kV}, {kC, kV});
    StateIdx lb = b.add_state(StateName::sync(Str{Symbol::boundary()}));
    StateIdx deleted = b.add_state(StateName::sync(Str{delete_v}));
    StateIdx kept = b.add_state(StateName::sync(Str{keep_v}));
    b.set_start(lb);
    for (StateIdx q : {lb, deleted, kept}) {
        b.set_final(q, Str{});
        b.set_transition(q, kC, q, Str{kC});
    }
    b.set_transition(lb, kV, deleted, Str{});
    b.set_transition(deleted, kV, kept, Str{kV});
    b.set_transition(kept, kV, deleted, Str{});
    return std::move(b).build();
}

Sfst make_tiosl_not_tssl() {
    const Symbol a = Symbol::unchecked("a");
    const Symbol bb = Symbol::unchecked("b");
    const Symbol c = Symbol::unchecked("c");
    const Symbol d = Symbol::unchecked("d");
    Sfst::Builder b({a, bb}, {a, bb, c, d});
    const Str boundary{Symbol::boundary()};
    StateIdx q0 = b.add_state(StateName::io(boundary, boundary));
    StateIdx qaa = b.add_state(StateName::io(Str{a}, Str{a}));
    StateIdx qbb = b.add_state(StateName::io(Str{bb}, Str{bb}));
    StateIdx qab = b.add_state(StateName::io(Str{a}, Str{bb}));
    StateIdx qba = b.add_state(StateName::io(Str{bb}, Str{a}));
    b.set_start(q0);
    for (StateIdx q : {q0, qaa, qbb, qab, qba}) {
        b.set_final(q, Str{});
    }
    b.set_transition(q0, a, qaa, Str{a});
    b.set_transition(q0, bb, qbb, Str{bb});
    b.set_transition(qaa, a, qaa, Str{});
    b.set_transition(qaa, bb, qba, Str{c});
    b.set_transition(qbb, bb, qbb, Str{c});
    b.set_transition(qbb, a, qab, Str{});
    b.set_transition(qab, a, qab, Str{});
    b.set_transition(qab, bb, qbb, Str{d});
    b.set_transition(qba, bb, qba, Str{d});
    b.set_transition(qba, a, qaa, Str{});
    return std::move(b).build();
}

Sfst make_nononward_tssl() {
    const Symbol a = Symbol::unchecked("a");
    const Symbol bb = Symbol::unchecked("b");
    auto action = [](const char* input, std::initializer_list<const char*> output) {
        Str out;
        for (const char* token : output) {
            out.push_back(Symbol::unchecked(token));
        }
        return Action{Symbol::unchecked(input), out}.to_symbol();
    };
    Sfst::Builder b({a, bb}, {a, bb});
    StateIdx lb = b.add_state(StateName::sync(Str{Symbol::boundary()}));
    StateIdx a_a = b.add_state(StateName::sync(Str{action("a", {"a"})}));
    StateIdx b_b = b.add_state(StateName::sync(Str{action("b", {"b"})}));
    StateIdx b_del = b.add_state(StateName::sync(Str{action("b", {})}));
    StateIdx b_bb = b.add_state(StateName::sync(Str{action("b", {"b", "b"})}));
    StateIdx b_ab = b.add_state(StateName::sync(Str{action("b", {"a", "b"})}));
    StateIdx a_ba = b.add_state(StateName::sync(Str{action("a", {"b", "a"})}));
    StateIdx a_aa = b.add_state(StateName::sync(Str{action("a", {"a", "a"})}));
    StateIdx a_del = b.add_state(StateName::sync(Str{action("a", {})}));
    b.set_start(lb);

    b.set_final(lb, Str{});
    b.set_final(a_a, Str{a});
    b.set_final(b_b, Str{a});
    b.set_final(b_del, str_of({"b", "b"}));
    b.set_final(b_bb, Str{bb});
    b.set_final(b_ab, Str{bb});
    b.set_final(a_ba, Str{bb});
    b.set_final(a_aa, Str{bb});
    b.set_final(a_del, str_of({"a", "b"}));

    b.set_transition(lb, a, a_a, Str{a});
    b.set_transition(lb, bb, b_del, Str{});
    b.set_transition(a_a, a, a_a, Str{a});
    b.set_transition(a_a, bb, b_b, Str{bb});
    b.set_transition(b_b, bb, b_b, Str{bb});
    b.set_transition(b_b, a, a_a, Str{a});
    b.set_transition(b_del, bb, b_bb, str_of({"b", "b"}));
    b.set_transition(b_del, a, a_ba, str_of({"b", "a"}));
    for (StateIdx q : {b_bb, b_ab, a_ba, a_aa}) {
        b.set_transition(q, a, a_del, Str{});
        b.set_transition(q, bb, b_del, Str{});
    }
    b.set_transition(a_del, a, a_aa, str_of({"a", "a"}));
    b.set_transition(a_del, bb, b_ab, str_of({"a", "b"}));
    return std::move(b).build();
}

} // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"reduction", "syncope", "tiosl-not-tssl",
                                                "nononward-tssl"};
    return names;
}

bool is_builtin(std::string_view name) {
    for (const std::string& candidate : builtin_names()) {
        if (candidate == name) {
            return true;
        }
    }
    return false;
}

const Sfst& builtin(std::string_view name) {
    static const Sfst reduction = make_reduction();
    static const Sfst syncope = make_syncope();
    static const Sfst tiosl_not_tssl = make_tiosl_not_tssl();
    static const Sfst nononward_tssl = make_nononward_tssl();
    if (name == "reduction") {
        return reduction;
    }
    if (name == "syncope") {
        return syncope;
    }
    if (name == "tiosl-not-tssl") {
        return tiosl_not_tssl;
    }
    if (name == "nononward-tssl") {
        return nononward_tssl;
    }
    raise(ErrorCode::ParseError, "unknown builtin '" + std::string(name) + "'");
}

namespace {

Str alternate_vowels(const Str& x, const Str* odd_vowel_image) {
    Str out;
    std::size_t vowels = 0;
    for (const Symbol& s : x) {
        if (s == kV) {
            ++vowels;
            if (vowels % 2 == 0) {
                out.push_back(s);
            } else if (odd_vowel_image != nullptr) {
                out.append(*odd_vowel_image);
            }
        } else if (s == kC) {
            out.push_back(s);
        } else {
            raise(ErrorCode::UnknownSymbol, "symbol '" + s.token() + "' is not C or V");
        }
    }
    return out;
}

} // namespace

Str rs_direct(const Str& x) {
    return alternate_vowels(x, nullptr);
}

Str reduction_direct(const Str& x) {
    static const Str schwa{kSchwa};
    return alternate_vowels(x, &schwa);
}

SegmentClasses::SegmentClasses(std::map<Symbol, Symbol> mapping) : mapping_(std::move(mapping)) {
    for (const auto& [segment, image] : mapping_) {
        if (image != kC && image != kV && image != kSchwa) {
            raise(ErrorCode::ParseError,
                  "segment class for '" + segment.token() + "' must be C, V, or @");
        }
    }
}

SegmentClasses SegmentClasses::parse(std::string_view text) {
    std::map<Symbol, Symbol> mapping;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream tokens(line);
        std::vector<std::string> row;
        std::string token;
        while (tokens >> token) {
            row.push_back(token);
        }
        if (row.empty()) {
            continue;
        }
        if (row.size() != 4 || row[0] != "CLASS" || row[2] != ":") {
            raise(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected 'CLASS segment : C|V'");
        }
        if (!mapping.emplace(Symbol(row[1]), Symbol::unchecked(row[3])).second) {
            raise(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": duplicate class for '" + row[1] + "'");
        }
    }
    return SegmentClasses(std::move(mapping));
}

Str SegmentClasses::transliterate(const Str& word) const {
    Str out;
    for (const Symbol& segment : word) {
        auto it = mapping_.find(segment);
        if (it == mapping_.end()) {
            raise(ErrorCode::UnmappedSegment, "no class for segment '" + segment.token() + "'");
        }
        out.push_back(it->second);
    }
    return out;
}

} // namespace subreg
