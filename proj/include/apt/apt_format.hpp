#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "apt/lts.hpp"
#include "apt/petri_net.hpp"

namespace apt {

/// A parsed APT document: a labelled Petri net (.type LPN) or an lts (.type LTS).
struct Document {
    std::variant<PetriNet, Lts> model;

    bool is_net() const { return std::holds_alternative<PetriNet>(model); }
    const PetriNet& net() const { return std::get<PetriNet>(model); }
    const Lts& lts() const { return std::get<Lts>(model); }
};

/// Throws ParseError (with line and column) on malformed input.
Document parse_document(std::string_view text);
/// As parse_document, but insists on the given kind.
PetriNet parse_net(std::string_view text);
Lts parse_lts(std::string_view text);

/// Reads a file; InputError when it cannot be opened.
Document read_document(const std::string& path);
std::string read_text(const std::string& path);

std::string print_net(const PetriNet& net);
/// `state_comments[s]`, when given and nonempty, is emitted as a comment after state s.
std::string print_lts(const Lts& lts, const std::vector<std::string>& state_comments = {});
std::string print_document(const Document& doc);

/// "[ [p0:1] [p1:OMEGA] ... ]" as used in marking comments.
std::string marking_comment(const PetriNet& net, const std::vector<std::int64_t>& tokens);

std::string to_dot(const PetriNet& net);
std::string to_dot(const Lts& lts);

} // namespace apt
