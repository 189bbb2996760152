#include "subreg/decompose.hpp"

#include <sstream>
#include <vector>

namespace subreg {

Homomorphism Homomorphism::parse(std::string_view text) {
    std::map<Symbol, Str> mapping;
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
        if (row.size() < 3 || row[0] != "MAP" || row[2] != ":") {
            raise(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected 'MAP sym : out-sym...'");
        }
        Str image;
        for (std::size_t i = 3; i < row.size(); ++i) {
            image.push_back(Symbol::unchecked(row[i]));
        }
        if (!mapping.emplace(Symbol::unchecked(row[1]), std::move(image)).second) {
            raise(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": duplicate mapping for '" + row[1] + "'");
        }
    }
    return Homomorphism(std::move(mapping));
}

std::string Homomorphism::serialize() const {
    std::ostringstream out;
    for (const auto& [symbol, image] : mapping_) {
        out << "MAP " << symbol.token() << " :";
        for (const Symbol& s : image) {
            out << ' ' << s.token();
        }
        out << '\n';
    }
    return out.str();
}

Str Homomorphism::apply(const Str& x) const {
    Str out;
    for (const Symbol& s : x) {
        auto it = mapping_.find(s);
        if (it == mapping_.end()) {
            raise(ErrorCode::UnknownSymbol, "no image for symbol '" + s.token() + "'");
        }
        out.append(it->second);
    }
    return out;
}

Symbol pair_symbol(std::string_view tag, const Str& payload) {
    std::string token{tag};
    token += '|';
    for (std::size_t i = 0; i < payload.size(); ++i) {
        if (i > 0) {
            token += '.';
        }
        token += payload[i].token();
    }
    return Symbol::unchecked(std::move(token));
}

Decomposition decompose(const Sfst& machine) {
    // Work from the minimal form so the pair alphabet names the function's
    // own states, not the presentation's.
    Sfst minimal = minimize(machine);

    std::set<Symbol> pair_alphabet;
    std::map<Symbol, Str> eraser;
    auto tagged = [&](std::string_view tag, const Str& payload) {
        Symbol s = pair_symbol(tag, payload);
        pair_alphabet.insert(s);
        eraser.emplace(s, payload);
        return s;
    };

    struct Edge {
        StateIdx from;
        Symbol input;
        StateIdx to;
        Symbol emitted;
    };
    std::vector<Edge> edges;
    std::vector<Symbol> finals;
    for (StateIdx q = 0; q < minimal.state_count(); ++q) {
        for (const auto& [symbol, t] : minimal.transitions_from(q)) {
            edges.push_back(Edge{q, symbol, t.target,
                                 tagged(minimal.state_name(t.target).text, t.output)});
        }
        finals.push_back(tagged(kSigmaTag, minimal.final_output(q)));
    }

    Sfst::Builder builder(minimal.input_alphabet(), pair_alphabet);
    for (StateIdx q = 0; q < minimal.state_count(); ++q) {
        builder.add_state(minimal.state_name(q).text);
    }
    builder.set_start(minimal.start());
    for (StateIdx q = 0; q < minimal.state_count(); ++q) {
        builder.set_final(q, Str{finals[q]});
    }
    for (const Edge& edge : edges) {
        builder.set_transition(edge.from, edge.input, edge.to, Str{edge.emitted});
    }
    return Decomposition{std::move(builder).build(), Homomorphism(std::move(eraser))};
}

} // namespace subreg
