#include "subreg/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace subreg {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyLcpSet: return "EmptyLcpSet";
        case ErrorCode::UnknownSymbol: return "UnknownSymbol";
        case ErrorCode::ReservedToken: return "ReservedToken";
        case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorCode::ExactUnsupported: return "ExactUnsupported";
        case ErrorCode::NotTotal: return "NotTotal";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SearchTooLarge: return "SearchTooLarge";
        case ErrorCode::ShapeUnverifiable: return "ShapeUnverifiable";
        case ErrorCode::NotInClass: return "NotInClass";
        case ErrorCode::UnmappedSegment: return "UnmappedSegment";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

namespace {

bool has_whitespace(const std::string& token) {
    return std::any_of(token.begin(), token.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

} // namespace

Symbol::Symbol(std::string token) : token_(std::move(token)) {
    if (token_.empty()) {
        raise(ErrorCode::ReservedToken, "symbol token must be non-empty");
    }
    if (has_whitespace(token_)) {
        raise(ErrorCode::ReservedToken, "symbol token may not contain whitespace: '" + token_ + "'");
    }
    if (token_ == kBoundaryToken) {
        raise(ErrorCode::ReservedToken, "the boundary token is reserved");
    }
}

Symbol Symbol::boundary() {
    return Symbol(Unchecked{}, std::string(kBoundaryToken));
}

Symbol Symbol::unchecked(std::string token) {
    return Symbol(Unchecked{}, std::move(token));
}

bool Symbol::is_boundary() const {
    return token_ == kBoundaryToken;
}

Str Str::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Symbol> symbols;
    std::string token;
    while (in >> token) {
        symbols.emplace_back(token);
    }
    return Str(std::move(symbols));
}

void Str::append(const Str& other) {
    symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
}

Str Str::operator+(const Str& other) const {
    Str result = *this;
    result.append(other);
    return result;
}

Str Str::operator+(const Symbol& s) const {
    Str result = *this;
    result.push_back(s);
    return result;
}

bool Str::is_prefix_of(const Str& other) const {
    if (size() > other.size()) {
        return false;
    }
    return std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

Str Str::drop_front(std::size_t n) const {
    if (n > size()) {
        raise(ErrorCode::InternalError, "drop_front past end of string");
    }
    return Str(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(n), symbols_.end()));
}

Str Str::drop_prefix(const Str& prefix) const {
    if (!prefix.is_prefix_of(*this)) {
        raise(ErrorCode::InternalError,
              "'" + prefix.to_string() + "' is not a prefix of '" + to_string() + "'");
    }
    return drop_front(prefix.size());
}

bool Str::contains_boundary() const {
    return std::any_of(symbols_.begin(), symbols_.end(),
                       [](const Symbol& s) { return s.is_boundary(); });
}

std::string Str::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += symbols_[i].token();
    }
    return out;
}

Str lcp(const Str& a, const Str& b) {
    std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n && a[i] == b[i]) {
        ++i;
    }
    return Str(std::vector<Symbol>(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i)));
}

Str lcp(const std::vector<Str>& strings) {
    if (strings.empty()) {
        raise(ErrorCode::EmptyLcpSet, "lcp of an empty set is undefined");
    }
    Str result = strings.front();
    for (std::size_t i = 1; i < strings.size() && !result.empty(); ++i) {
        result = lcp(result, strings[i]);
    }
    return result;
}

Str ksuffix(const Str& x, std::size_t k) {
    std::vector<Symbol> out;
    out.reserve(k);
    if (x.size() >= k) {
        out.assign(x.begin() + static_cast<std::ptrdiff_t>(x.size() - k), x.end());
    } else {
        out.assign(k - x.size(), Symbol::boundary());
        out.insert(out.end(), x.begin(), x.end());
    }
    return Str(std::move(out));
}

Tier::Tier(std::set<Symbol> alphabet, std::set<Symbol> on_tier)
    : alphabet_(std::move(alphabet)), on_tier_(std::move(on_tier)) {
    for (const Symbol& s : alphabet_) {
        if (s.is_boundary()) {
            raise(ErrorCode::ReservedToken, "tier alphabets may not contain the boundary token");
        }
    }
    for (const Symbol& s : on_tier_) {
        if (alphabet_.count(s) == 0) {
            raise(ErrorCode::UnknownSymbol,
                  "on-tier symbol '" + s.token() + "' is not in the tier alphabet");
        }
    }
}

Tier Tier::full(std::set<Symbol> alphabet) {
    std::set<Symbol> on = alphabet;
    return Tier(std::move(alphabet), std::move(on));
}

Tier Tier::none(std::set<Symbol> alphabet) {
    return Tier(std::move(alphabet), {});
}

Str Tier::apply(const Str& x) const {
    std::vector<Symbol> out;
    out.reserve(x.size());
    for (const Symbol& s : x) {
        if (s.is_boundary()) {
            out.push_back(s);
            continue;
        }
        if (alphabet_.count(s) == 0) {
            raise(ErrorCode::UnknownSymbol, "symbol '" + s.token() + "' is outside the tier alphabet");
        }
        if (is_on(s)) {
            out.push_back(s);
        }
    }
    return Str(std::move(out));
}

Symbol Action::to_symbol() const {
    auto check = [](const std::string& token) {
        if (token.find(':') != std::string::npos || token.find('.') != std::string::npos) {
            raise(ErrorCode::ReservedToken,
                  "':' and '.' are reserved inside action tokens; offending token: '" + token + "'");
        }
    };
    check(input.token());
    std::string token = input.token() + ":";
    for (std::size_t i = 0; i < output.size(); ++i) {
        check(output[i].token());
        if (i > 0) {
            token += '.';
        }
        token += output[i].token();
    }
    return Symbol::unchecked(std::move(token));
}

Action Action::from_symbol(const Symbol& s) {
    const std::string& token = s.token();
    std::size_t colon = token.find(':');
    if (colon == std::string::npos || colon == 0) {
        raise(ErrorCode::ParseError, "not an action token: '" + token + "'");
    }
    Symbol input = Symbol::unchecked(token.substr(0, colon));
    if (input.is_boundary()) {
        raise(ErrorCode::ParseError, "action input may not be the boundary token");
    }
    Str output;
    std::size_t pos = colon + 1;
    while (pos < token.size()) {
        std::size_t dot = token.find('.', pos);
        std::size_t end = dot == std::string::npos ? token.size() : dot;
        if (end == pos) {
            raise(ErrorCode::ParseError, "empty output component in action token: '" + token + "'");
        }
        output.push_back(Symbol::unchecked(token.substr(pos, end - pos)));
        pos = end + 1;
    }
    return Action{std::move(input), std::move(output)};
}

Str ActionStr::input_projection() const {
    std::vector<Symbol> out;
    out.reserve(actions_.size());
    for (const Action& a : actions_) {
        out.push_back(a.input);
    }
    return Str(std::move(out));
}

Str ActionStr::output_projection() const {
    Str out;
    for (const Action& a : actions_) {
        out.append(a.output);
    }
    return out;
}

Str ActionStr::to_str() const {
    std::vector<Symbol> out;
    out.reserve(actions_.size());
    for (const Action& a : actions_) {
        out.push_back(a.to_symbol());
    }
    return Str(std::move(out));
}

std::set<Symbol> action_symbols(const std::set<Action>& actions) {
    std::set<Symbol> out;
    for (const Action& a : actions) {
        out.insert(a.to_symbol());
    }
    return out;
}

Str extend_window(const Str& window, const Str& tiered_increment, std::size_t k) {
    std::vector<Symbol> stripped;
    stripped.reserve(window.size() + tiered_increment.size());
    for (const Symbol& s : window) {
        if (!s.is_boundary()) {
            stripped.push_back(s);
        }
    }
    stripped.insert(stripped.end(), tiered_increment.begin(), tiered_increment.end());
    return ksuffix(Str(std::move(stripped)), k);
}

} // namespace subreg
