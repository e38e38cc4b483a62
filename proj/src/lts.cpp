#include "apt/lts.hpp"

#include <algorithm>

#include "apt/error.hpp"

namespace apt {

bool ParikhVector::is_zero() const {
    return std::all_of(counts_.begin(), counts_.end(), [](std::int64_t c) { return c == 0; });
}

bool ParikhVector::leq(const ParikhVector& other) const {
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] > other.counts_[i])
            return false;
    return true;
}

bool ParikhVector::disjoint_support(const ParikhVector& other) const {
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] != 0 && other.counts_[i] != 0)
            return false;
    return true;
}

ParikhVector& ParikhVector::operator+=(const ParikhVector& other) {
    for (std::size_t i = 0; i < counts_.size(); ++i)
        counts_[i] += other.counts_[i];
    return *this;
}

ParikhVector& ParikhVector::operator-=(const ParikhVector& other) {
    for (std::size_t i = 0; i < counts_.size(); ++i)
        counts_[i] -= other.counts_[i];
    return *this;
}

std::optional<StateIndex> Lts::find_state(std::string_view name) const {
    auto it = state_lookup_.find(std::string(name));
    if (it == state_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::optional<LabelIndex> Lts::find_label(std::string_view name) const {
    auto it = label_lookup_.find(std::string(name));
    if (it == label_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::optional<StateIndex> Lts::successor(StateIndex s, LabelIndex label) const {
    for (std::size_t a : outgoing_.at(s))
        if (arcs_[a].label == label)
            return arcs_[a].target;
    return std::nullopt;
}

bool Lts::has_locations() const {
    return std::any_of(locations_.begin(), locations_.end(),
                       [](const auto& loc) { return loc.has_value(); });
}

StateIndex LtsBuilder::add_state(const std::string& name) {
    if (lts_.state_lookup_.contains(name))
        throw InputError("duplicate state '" + name + "'");
    if (lts_.label_lookup_.contains(name))
        throw InputError("'" + name + "' is already a label; states and labels must be disjoint");
    StateIndex s = lts_.state_names_.size();
    lts_.state_names_.push_back(name);
    lts_.state_lookup_.emplace(name, s);
    lts_.outgoing_.emplace_back();
    lts_.incoming_.emplace_back();
    return s;
}

LabelIndex LtsBuilder::add_label(const std::string& name, std::optional<std::string> location) {
    if (lts_.label_lookup_.contains(name))
        throw InputError("duplicate label '" + name + "'");
    if (lts_.state_lookup_.contains(name))
        throw InputError("'" + name + "' is already a state; states and labels must be disjoint");
    LabelIndex l = lts_.label_names_.size();
    lts_.label_names_.push_back(name);
    lts_.locations_.push_back(std::move(location));
    lts_.label_lookup_.emplace(name, l);
    return l;
}

LabelIndex LtsBuilder::label(const std::string& name) {
    if (auto l = lts_.find_label(name))
        return *l;
    return add_label(name);
}

StateIndex LtsBuilder::state(const std::string& name) {
    if (auto s = lts_.find_state(name))
        return *s;
    return add_state(name);
}

void LtsBuilder::add_arc(StateIndex source, LabelIndex label, StateIndex target) {
    if (source >= lts_.num_states() || target >= lts_.num_states())
        throw InputError("arc refers to an unknown state");
    if (label >= lts_.num_labels())
        throw InputError("arc refers to an unknown label");
    if (!arc_set_.emplace(source, label, target).second)
        return;
    std::size_t index = lts_.arcs_.size();
    lts_.arcs_.push_back({source, label, target});
    lts_.outgoing_[source].push_back(index);
    lts_.incoming_[target].push_back(index);
}

void LtsBuilder::add_arc(const std::string& source, const std::string& label, const std::string& target) {
    StateIndex from = state(source);
    LabelIndex via = this->label(label);
    add_arc(from, via, state(target));
}

void LtsBuilder::set_initial(StateIndex s) {
    if (s >= lts_.num_states())
        throw InputError("initial state out of range");
    lts_.initial_ = s;
    initial_set_ = true;
}

void LtsBuilder::set_location(LabelIndex l, std::optional<std::string> location) {
    lts_.locations_.at(l) = std::move(location);
}

Lts LtsBuilder::build() {
    if (lts_.num_states() == 0)
        throw InputError("an lts needs at least one state");
    if (!initial_set_)
        lts_.initial_ = 0;
    Lts result = std::move(lts_);
    lts_ = Lts{};
    arc_set_.clear();
    initial_set_ = false;
    return result;
}

} // namespace apt
