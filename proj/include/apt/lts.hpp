#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace apt {

using StateIndex = std::size_t;
using LabelIndex = std::size_t;

/// Per-label occurrence counts, indexed by label.
class ParikhVector {
  public:
    ParikhVector() = default;
    explicit ParikhVector(std::size_t labels) : counts_(labels, 0) {}
    explicit ParikhVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {}

    std::size_t size() const noexcept { return counts_.size(); }
    std::int64_t operator[](std::size_t label) const { return counts_[label]; }
    std::int64_t& operator[](std::size_t label) { return counts_[label]; }
    const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

    bool is_zero() const;
    /// Componentwise <=.
    bool leq(const ParikhVector& other) const;
    /// Componentwise <= and not equal.
    bool strictly_less(const ParikhVector& other) const { return leq(other) && *this != other; }
    bool disjoint_support(const ParikhVector& other) const;

    ParikhVector& operator+=(const ParikhVector& other);
    ParikhVector& operator-=(const ParikhVector& other);
    friend ParikhVector operator+(ParikhVector a, const ParikhVector& b) { return a += b; }
    friend ParikhVector operator-(ParikhVector a, const ParikhVector& b) { return a -= b; }
    friend bool operator==(const ParikhVector&, const ParikhVector&) = default;
    friend auto operator<=>(const ParikhVector&, const ParikhVector&) = default;

  private:
    std::vector<std::int64_t> counts_;
};

/// A finite labelled transition system with a designated initial state.
/// Immutable once built; construct through LtsBuilder.
class Lts {
  public:
    struct Arc {
        StateIndex source;
        LabelIndex label;
        StateIndex target;
        friend bool operator==(const Arc&, const Arc&) = default;
    };

    std::size_t num_states() const noexcept { return state_names_.size(); }
    std::size_t num_labels() const noexcept { return label_names_.size(); }
    std::size_t num_arcs() const noexcept { return arcs_.size(); }

    const std::string& state_name(StateIndex s) const { return state_names_.at(s); }
    const std::string& label_name(LabelIndex l) const { return label_names_.at(l); }
    const std::vector<std::string>& state_names() const noexcept { return state_names_; }
    const std::vector<std::string>& label_names() const noexcept { return label_names_; }
    std::optional<StateIndex> find_state(std::string_view name) const;
    std::optional<LabelIndex> find_label(std::string_view name) const;

    StateIndex initial() const noexcept { return initial_; }
    std::span<const Arc> arcs() const noexcept { return arcs_; }
    const Arc& arc(std::size_t index) const { return arcs_.at(index); }
    /// Indices into arcs() leaving/entering a state, in insertion order.
    const std::vector<std::size_t>& outgoing(StateIndex s) const { return outgoing_.at(s); }
    const std::vector<std::size_t>& incoming(StateIndex s) const { return incoming_.at(s); }

    /// First target reached from `s` via `label`, if any.
    std::optional<StateIndex> successor(StateIndex s, LabelIndex label) const;
    bool enables(StateIndex s, LabelIndex label) const { return successor(s, label).has_value(); }

    const std::optional<std::string>& location(LabelIndex l) const { return locations_.at(l); }
    bool has_locations() const;

    const std::string& name() const noexcept { return name_; }
    const std::string& description() const noexcept { return description_; }

    ParikhVector zero_vector() const { return ParikhVector(num_labels()); }

  private:
    friend class LtsBuilder;

    std::vector<std::string> state_names_;
    std::vector<std::string> label_names_;
    std::vector<std::optional<std::string>> locations_;
    std::unordered_map<std::string, StateIndex> state_lookup_;
    std::unordered_map<std::string, LabelIndex> label_lookup_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::vector<std::vector<std::size_t>> incoming_;
    StateIndex initial_ = 0;
    std::string name_;
    std::string description_;
};

/// Incrementally assembles an Lts. Arcs are a set: re-adding an arc is a no-op.
class LtsBuilder {
  public:
    StateIndex add_state(const std::string& name);
    LabelIndex add_label(const std::string& name, std::optional<std::string> location = std::nullopt);
    /// Adds the label if unknown, otherwise returns the existing one.
    LabelIndex label(const std::string& name);
    /// Adds the state if unknown, otherwise returns the existing one.
    StateIndex state(const std::string& name);
    void add_arc(StateIndex source, LabelIndex label, StateIndex target);
    void add_arc(const std::string& source, const std::string& label, const std::string& target);
    void set_initial(StateIndex s);
    void set_location(LabelIndex l, std::optional<std::string> location);
    void set_name(std::string name) { lts_.name_ = std::move(name); }
    void set_description(std::string description) { lts_.description_ = std::move(description); }

    std::size_t num_states() const noexcept { return lts_.num_states(); }
    std::optional<StateIndex> find_state(std::string_view name) const { return lts_.find_state(name); }
    std::optional<LabelIndex> find_label(std::string_view name) const { return lts_.find_label(name); }

    /// Validates and returns the finished Lts. Throws InputError when no state exists.
    Lts build();

  private:
    Lts lts_;
    bool initial_set_ = false;
    std::set<std::tuple<StateIndex, LabelIndex, StateIndex>> arc_set_;
};

} // namespace apt
