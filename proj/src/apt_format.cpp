#include "apt/apt_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "apt/error.hpp"

namespace apt {

namespace {

enum class Tok { ident, number, string, directive, lbrace, rbrace, lbracket, rbracket, equals, star, comma, colon, arrow, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

const char* describe(Tok kind) {
    switch (kind) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::string: return "string";
    case Tok::directive: return "section keyword";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::equals: return "'='";
    case Tok::star: return "'*'";
    case Tok::comma: return "','";
    case Tok::colon: return "':'";
    case Tok::arrow: return "'->'";
    case Tok::end: return "end of input";
    }
    return "token";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        const std::size_t l = line, cl = col;
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n')
                advance();
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            std::size_t close = text.find("*/", i + 2);
            if (close == std::string_view::npos)
                throw ParseError(l, cl, "unterminated comment");
            advance(close + 2 - i);
            continue;
        }
        if (c == '"') {
            std::string value;
            advance();
            while (true) {
                if (i >= text.size())
                    throw ParseError(l, cl, "unterminated string");
                char d = text[i];
                if (d == '"') {
                    advance();
                    break;
                }
                if (d == '\\' && i + 1 < text.size()) {
                    value += text[i + 1];
                    advance(2);
                    continue;
                }
                value += d;
                advance();
            }
            tokens.push_back({Tok::string, std::move(value), l, cl});
            continue;
        }
        if (c == '.') {
            std::size_t j = i + 1;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            if (j == i + 1)
                throw ParseError(l, cl, "expected a section keyword after '.'");
            tokens.push_back({Tok::directive, std::string(text.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            if (j < text.size() && ident_start(text[j]))
                throw ParseError(l, cl, "identifiers must not start with a digit");
            tokens.push_back({Tok::number, std::string(text.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            tokens.push_back({Tok::ident, std::string(text.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            tokens.push_back({Tok::arrow, "->", l, cl});
            advance(2);
            continue;
        }
        Tok kind;
        switch (c) {
        case '{': kind = Tok::lbrace; break;
        case '}': kind = Tok::rbrace; break;
        case '[': kind = Tok::lbracket; break;
        case ']': kind = Tok::rbracket; break;
        case '=': kind = Tok::equals; break;
        case '*': kind = Tok::star; break;
        case ',': kind = Tok::comma; break;
        case ':': kind = Tok::colon; break;
        default: throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
        }
        tokens.push_back({kind, std::string(1, c), l, cl});
        advance();
    }
    tokens.push_back({Tok::end, "", line, col});
    return tokens;
}

struct Named {
    std::string name;
    std::size_t line, column;
    std::map<std::string, std::optional<std::string>> attributes;
};

struct MultisetEntry {
    Named place;
    std::int64_t count;
};

struct Flow {
    Named transition;
    std::vector<MultisetEntry> pre, post;
};

struct Raw {
    std::optional<Token> type;
    std::optional<std::string> name, description;
    std::optional<std::vector<Named>> places, transitions, states, labels;
    std::optional<std::vector<Flow>> flows;
    std::optional<std::vector<MultisetEntry>> initial_marking;
    std::optional<std::vector<std::array<Named, 3>>> arcs;
};

class Parser {
  public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    Raw parse() {
        Raw raw;
        while (peek().kind != Tok::end) {
            Token d = expect(Tok::directive);
            auto once = [&](bool present) {
                if (present)
                    throw ParseError(d.line, d.column, "duplicate section " + d.text);
            };
            if (d.text == ".type") {
                if (raw.type)
                    throw ParseError(d.line, d.column, "multiple .type lines");
                raw.type = expect(Tok::ident);
            } else if (d.text == ".name") {
                once(raw.name.has_value());
                raw.name = expect(Tok::string).text;
            } else if (d.text == ".description") {
                once(raw.description.has_value());
                raw.description = expect(Tok::string).text;
            } else if (d.text == ".places") {
                once(raw.places.has_value());
                raw.places = names();
            } else if (d.text == ".transitions") {
                once(raw.transitions.has_value());
                raw.transitions = names();
            } else if (d.text == ".states") {
                once(raw.states.has_value());
                raw.states = names();
            } else if (d.text == ".labels") {
                once(raw.labels.has_value());
                raw.labels = names();
            } else if (d.text == ".flows") {
                once(raw.flows.has_value());
                raw.flows.emplace();
                while (peek().kind == Tok::ident) {
                    Flow f;
                    f.transition = named(false);
                    expect(Tok::colon);
                    f.pre = multiset();
                    expect(Tok::arrow);
                    f.post = multiset();
                    raw.flows->push_back(std::move(f));
                }
            } else if (d.text == ".initial_marking") {
                once(raw.initial_marking.has_value());
                raw.initial_marking = multiset();
            } else if (d.text == ".arcs") {
                once(raw.arcs.has_value());
                raw.arcs.emplace();
                while (peek().kind == Tok::ident) {
                    Named s = named(false);
                    Named l = named(false);
                    Named t = named(false);
                    raw.arcs->push_back({s, l, t});
                }
            } else {
                throw ParseError(d.line, d.column, "unknown section " + d.text);
            }
        }
        if (!raw.type)
            throw ParseError(1, 1, "missing .type line");
        return raw;
    }

  private:
    const Token& peek() const { return tokens_[pos_]; }

    Token expect(Tok kind) {
        const Token& t = peek();
        if (t.kind != kind)
            throw ParseError(t.line, t.column,
                             std::string("expected ") + describe(kind) + ", found " +
                                 (t.kind == Tok::end ? "end of input" : "'" + t.text + "'"));
        return tokens_[pos_++];
    }

    Named named(bool with_attributes) {
        Token id = expect(Tok::ident);
        Named n{id.text, id.line, id.column, {}};
        if (with_attributes && peek().kind == Tok::lbracket) {
            ++pos_;
            while (true) {
                Token key = expect(Tok::ident);
                std::optional<std::string> value;
                if (peek().kind == Tok::equals) {
                    ++pos_;
                    value = expect(Tok::string).text;
                }
                if (n.attributes.contains(key.text))
                    throw ParseError(key.line, key.column, "duplicate attribute '" + key.text + "'");
                n.attributes.emplace(key.text, value);
                if (peek().kind == Tok::comma) {
                    ++pos_;
                    continue;
                }
                expect(Tok::rbracket);
                break;
            }
        }
        return n;
    }

    std::vector<Named> names() {
        std::vector<Named> out;
        while (peek().kind == Tok::ident)
            out.push_back(named(true));
        return out;
    }

    std::vector<MultisetEntry> multiset() {
        expect(Tok::lbrace);
        std::vector<MultisetEntry> out;
        if (peek().kind == Tok::rbrace) {
            ++pos_;
            return out;
        }
        while (true) {
            std::int64_t count = 1;
            if (peek().kind == Tok::number) {
                Token n = tokens_[pos_++];
                if (n.text.size() > 18)
                    throw ParseError(n.line, n.column, "multiplicity too large");
                count = std::stoll(n.text);
                if (count <= 0)
                    throw ParseError(n.line, n.column, "multiplicity must be positive");
                expect(Tok::star);
            }
            out.push_back({named(false), count});
            if (peek().kind == Tok::comma) {
                ++pos_;
                continue;
            }
            expect(Tok::rbrace);
            return out;
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

[[noreturn]] void fail_at(const Named& n, const std::string& message) { throw ParseError(n.line, n.column, message); }

void only_attributes(const Named& n, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : n.attributes)
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail_at(n, "unknown attribute '" + key + "' on '" + n.name + "'");
}

std::optional<std::string> string_attribute(const Named& n, const std::string& key) {
    auto it = n.attributes.find(key);
    if (it == n.attributes.end())
        return std::nullopt;
    if (!it->second)
        fail_at(n, "attribute '" + key + "' needs a value");
    return it->second;
}

void reject(bool present, const char* section, const Token& type) {
    if (present)
        throw ParseError(type.line, type.column, std::string("section ") + section + " is not allowed for .type " + type.text);
}

PetriNet build_net(const Raw& raw) {
    const Token& type = *raw.type;
    reject(raw.states.has_value(), ".states", type);
    reject(raw.labels.has_value(), ".labels", type);
    reject(raw.arcs.has_value(), ".arcs", type);
    PetriNet net;
    net.set_name(raw.name.value_or(""));
    net.set_description(raw.description.value_or(""));
    if (raw.places)
        for (const auto& p : *raw.places) {
            only_attributes(p, {});
            if (net.find_place(p.name) || net.find_transition(p.name))
                fail_at(p, "duplicate identifier '" + p.name + "'");
            net.add_place(p.name);
        }
    if (raw.transitions)
        for (const auto& t : *raw.transitions) {
            only_attributes(t, {"label", "location"});
            if (net.find_place(t.name) || net.find_transition(t.name))
                fail_at(t, "duplicate identifier '" + t.name + "'");
            TransitionIndex idx = net.add_transition(t.name, string_attribute(t, "label"));
            net.set_location(idx, string_attribute(t, "location"));
        }
    auto place = [&](const Named& n) {
        auto p = net.find_place(n.name);
        if (!p)
            fail_at(n, "unknown place '" + n.name + "'");
        return *p;
    };
    if (raw.flows) {
        std::vector<bool> seen(net.num_transitions(), false);
        for (const auto& f : *raw.flows) {
            auto t = net.find_transition(f.transition.name);
            if (!t)
                fail_at(f.transition, "unknown transition '" + f.transition.name + "'");
            if (seen[*t])
                fail_at(f.transition, "duplicate flow for transition '" + f.transition.name + "'");
            seen[*t] = true;
            for (const auto& e : f.pre)
                net.add_consume(place(e.place), *t, e.count);
            for (const auto& e : f.post)
                net.add_produce(*t, place(e.place), e.count);
        }
    }
    if (raw.initial_marking)
        for (const auto& e : *raw.initial_marking) {
            PlaceIndex p = place(e.place);
            net.set_initial_tokens(p, net.initial_marking()[p] + e.count);
        }
    return net;
}

Lts build_lts(const Raw& raw) {
    const Token& type = *raw.type;
    reject(raw.places.has_value(), ".places", type);
    reject(raw.transitions.has_value(), ".transitions", type);
    reject(raw.flows.has_value(), ".flows", type);
    reject(raw.initial_marking.has_value(), ".initial_marking", type);
    LtsBuilder b;
    b.set_name(raw.name.value_or(""));
    b.set_description(raw.description.value_or(""));
    std::optional<StateIndex> initial;
    if (raw.states)
        for (const auto& s : *raw.states) {
            only_attributes(s, {"initial"});
            if (b.find_state(s.name) || b.find_label(s.name))
                fail_at(s, "duplicate identifier '" + s.name + "'");
            StateIndex idx = b.add_state(s.name);
            if (s.attributes.contains("initial")) {
                if (s.attributes.at("initial"))
                    fail_at(s, "attribute 'initial' takes no value");
                if (initial)
                    fail_at(s, "more than one initial state");
                initial = idx;
            }
        }
    if (!initial)
        throw ParseError(type.line, type.column, "no state is marked [initial]");
    b.set_initial(*initial);
    if (raw.labels)
        for (const auto& l : *raw.labels) {
            only_attributes(l, {"location"});
            if (b.find_state(l.name) || b.find_label(l.name))
                fail_at(l, "duplicate identifier '" + l.name + "'");
            b.add_label(l.name, string_attribute(l, "location"));
        }
    if (raw.arcs)
        for (const auto& [s, l, t] : *raw.arcs) {
            auto src = b.find_state(s.name);
            if (!src)
                fail_at(s, "unknown state '" + s.name + "'");
            auto label = b.find_label(l.name);
            if (!label)
                fail_at(l, "unknown label '" + l.name + "'");
            auto dst = b.find_state(t.name);
            if (!dst)
                fail_at(t, "unknown state '" + t.name + "'");
            b.add_arc(*src, *label, *dst);
        }
    return b.build();
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

void header(std::ostringstream& out, const std::string& name, const std::string& description, const char* type) {
    out << ".name " << quote(name) << '\n';
    if (!description.empty())
        out << ".description " << quote(description) << '\n';
    out << ".type " << type << "\n\n";
}

std::string multiset(const PetriNet& net, const std::vector<std::pair<PlaceIndex, Weight>>& entries) {
    std::string out = "{";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i)
            out += ", ";
        if (entries[i].second > 1)
            out += std::to_string(entries[i].second) + " * ";
        out += net.place_name(entries[i].first);
    }
    return out + "}";
}

std::string dot_id(const std::string& s) { return quote(s); }

} // namespace

Document parse_document(std::string_view text) {
    Raw raw = Parser(text).parse();
    const Token& type = *raw.type;
    if (type.text == "LPN" || type.text == "PN")
        return Document{build_net(raw)};
    if (type.text == "LTS")
        return Document{build_lts(raw)};
    throw ParseError(type.line, type.column, "unknown .type '" + type.text + "' (expected LPN, PN or LTS)");
}

PetriNet parse_net(std::string_view text) {
    Document doc = parse_document(text);
    if (!doc.is_net())
        throw InputError("expected a Petri net (.type LPN), got an lts");
    return std::move(std::get<PetriNet>(doc.model));
}

Lts parse_lts(std::string_view text) {
    Document doc = parse_document(text);
    if (doc.is_net())
        throw InputError("expected an lts (.type LTS), got a Petri net");
    return std::move(std::get<Lts>(doc.model));
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Document read_document(const std::string& path) {
    try {
        return parse_document(read_text(path));
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    }
}

std::string print_net(const PetriNet& net) {
    std::ostringstream out;
    header(out, net.name(), net.description(), "LPN");
    out << ".places\n";
    for (PlaceIndex p = 0; p < net.num_places(); ++p)
        out << net.place_name(p) << '\n';
    out << "\n.transitions\n";
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
        out << net.transition_name(t);
        std::vector<std::string> attrs;
        if (net.label(t) != net.transition_name(t))
            attrs.push_back("label=" + quote(net.label(t)));
        if (net.location(t))
            attrs.push_back("location=" + quote(*net.location(t)));
        if (!attrs.empty()) {
            out << '[';
            for (std::size_t i = 0; i < attrs.size(); ++i)
                out << (i ? ", " : "") << attrs[i];
            out << ']';
        }
        out << '\n';
    }
    out << "\n.flows\n";
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
        out << net.transition_name(t) << ": " << multiset(net, net.preset(t)) << " -> "
            << multiset(net, net.postset(t)) << '\n';
    std::vector<std::pair<PlaceIndex, Weight>> marked;
    for (PlaceIndex p = 0; p < net.num_places(); ++p)
        if (net.initial_marking()[p] > 0)
            marked.emplace_back(p, net.initial_marking()[p]);
    out << "\n.initial_marking " << multiset(net, marked) << '\n';
    return out.str();
}

std::string print_lts(const Lts& lts, const std::vector<std::string>& state_comments) {
    std::ostringstream out;
    header(out, lts.name(), lts.description(), "LTS");
    out << ".states\n";
    for (StateIndex s = 0; s < lts.num_states(); ++s) {
        out << lts.state_name(s);
        if (s == lts.initial())
            out << "[initial]";
        if (s < state_comments.size() && !state_comments[s].empty())
            out << " /* " << state_comments[s] << " */";
        out << '\n';
    }
    out << "\n.labels\n";
    for (LabelIndex l = 0; l < lts.num_labels(); ++l) {
        out << lts.label_name(l);
        if (lts.location(l))
            out << "[location=" << quote(*lts.location(l)) << ']';
        out << '\n';
    }
    out << "\n.arcs\n";
    std::vector<std::tuple<StateIndex, LabelIndex, StateIndex>> arcs;
    for (const auto& a : lts.arcs())
        arcs.emplace_back(a.source, a.label, a.target);
    std::sort(arcs.begin(), arcs.end());
    for (const auto& [s, l, t] : arcs)
        out << lts.state_name(s) << ' ' << lts.label_name(l) << ' ' << lts.state_name(t) << '\n';
    return out.str();
}

std::string print_document(const Document& doc) { return doc.is_net() ? print_net(doc.net()) : print_lts(doc.lts()); }

std::string marking_comment(const PetriNet& net, const std::vector<std::int64_t>& tokens) {
    std::string out = "[";
    for (PlaceIndex p = 0; p < net.num_places(); ++p) {
        out += " [" + net.place_name(p) + ":";
        out += tokens[p] == OmegaMarking::omega ? "OMEGA" : std::to_string(tokens[p]);
        out += "]";
    }
    return out + " ]";
}

std::string to_dot(const PetriNet& net) {
    std::ostringstream out;
    out << "digraph " << dot_id(net.name()) << " {\n";
    for (PlaceIndex p = 0; p < net.num_places(); ++p) {
        std::int64_t tokens = net.initial_marking()[p];
        out << "  " << dot_id(net.place_name(p)) << " [shape=circle, label="
            << dot_id(net.place_name(p) + (tokens > 0 ? "\\n" + std::to_string(tokens) : "")) << "];\n";
    }
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t)
        out << "  " << dot_id(net.transition_name(t)) << " [shape=box, label=" << dot_id(net.label(t)) << "];\n";
    auto weight = [](Weight w) { return w > 1 ? " [label=\"" + std::to_string(w) + "\"]" : std::string(); };
    for (TransitionIndex t = 0; t < net.num_transitions(); ++t) {
        for (auto [p, w] : net.preset(t))
            out << "  " << dot_id(net.place_name(p)) << " -> " << dot_id(net.transition_name(t)) << weight(w) << ";\n";
        for (auto [p, w] : net.postset(t))
            out << "  " << dot_id(net.transition_name(t)) << " -> " << dot_id(net.place_name(p)) << weight(w) << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const Lts& lts) {
    std::ostringstream out;
    out << "digraph " << dot_id(lts.name()) << " {\n";
    for (StateIndex s = 0; s < lts.num_states(); ++s) {
        out << "  " << dot_id(lts.state_name(s)) << " [shape=circle";
        if (s == lts.initial())
            out << ", peripheries=2";
        out << "];\n";
    }
    for (const auto& a : lts.arcs())
        out << "  " << dot_id(lts.state_name(a.source)) << " -> " << dot_id(lts.state_name(a.target))
            << " [label=" << dot_id(lts.label_name(a.label)) << "];\n";
    out << "}\n";
    return out.str();
}

} // namespace apt
