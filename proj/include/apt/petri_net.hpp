#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace apt {

using PlaceIndex = std::size_t;
using TransitionIndex = std::size_t;
using Weight = std::int64_t;

/// Token counts per place.
class Marking {
  public:
    Marking() = default;
    explicit Marking(std::size_t places) : tokens_(places, 0) {}
    explicit Marking(std::vector<std::int64_t> tokens) : tokens_(std::move(tokens)) {}

    std::size_t size() const noexcept { return tokens_.size(); }
    std::int64_t operator[](PlaceIndex p) const { return tokens_[p]; }
    std::int64_t& operator[](PlaceIndex p) { return tokens_[p]; }
    const std::vector<std::int64_t>& tokens() const noexcept { return tokens_; }

    bool covers(const Marking& other) const;
    Marking& operator+=(const Marking& other);
    friend Marking operator+(Marking a, const Marking& b) { return a += b; }
    friend Marking operator*(std::int64_t k, Marking m) {
        for (auto& t : m.tokens_)
            t *= k;
        return m;
    }
    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking&, const Marking&) = default;

  private:
    std::vector<std::int64_t> tokens_;
};

struct MarkingHash {
    std::size_t operator()(const Marking& m) const noexcept;
};

/// Marking extended with the unbounded value omega.
class OmegaMarking {
  public:
    static constexpr std::int64_t omega = INT64_MAX;

    OmegaMarking() = default;
    explicit OmegaMarking(const Marking& m) : tokens_(m.tokens()) {}
    explicit OmegaMarking(std::vector<std::int64_t> tokens) : tokens_(std::move(tokens)) {}

    std::size_t size() const noexcept { return tokens_.size(); }
    std::int64_t operator[](PlaceIndex p) const { return tokens_[p]; }
    std::int64_t& operator[](PlaceIndex p) { return tokens_[p]; }
    const std::vector<std::int64_t>& tokens() const noexcept { return tokens_; }
    bool is_omega(PlaceIndex p) const { return tokens_[p] == omega; }
    bool has_omega() const;
    /// Componentwise >= with omega above every number.
    bool covers(const OmegaMarking& other) const;
    /// Converts to a concrete marking; only valid without omega entries.
    Marking concrete() const { return Marking(tokens_); }

    friend bool operator==(const OmegaMarking&, const OmegaMarking&) = default;

  private:
    std::vector<std::int64_t> tokens_;
};

struct OmegaMarkingHash {
    std::size_t operator()(const OmegaMarking& m) const noexcept;
};

/// Place/transition net with arc weights, initial marking and a transition labelling.
///
/// Nets are edited in place through the member functions; the derived
/// pre-/post-set tables of places are cached and rebuilt after any edit.
class PetriNet {
  public:
    PetriNet() = default;
    PetriNet(const PetriNet& other);
    PetriNet& operator=(const PetriNet& other);
    PetriNet(PetriNet&& other) noexcept;
    PetriNet& operator=(PetriNet&& other) noexcept;

    PlaceIndex add_place(const std::string& name, std::int64_t initial_tokens = 0);
    TransitionIndex add_transition(const std::string& name, std::optional<std::string> label = std::nullopt);
    /// Sets F(p,t).
    void set_consume(PlaceIndex p, TransitionIndex t, Weight w);
    /// Sets F(t,p).
    void set_produce(TransitionIndex t, PlaceIndex p, Weight w);
    void add_consume(PlaceIndex p, TransitionIndex t, Weight w) { set_consume(p, t, consume(p, t) + w); }
    void add_produce(TransitionIndex t, PlaceIndex p, Weight w) { set_produce(t, p, produce(t, p) + w); }
    void set_initial_tokens(PlaceIndex p, std::int64_t tokens);
    void set_label(TransitionIndex t, std::string label);
    void set_location(TransitionIndex t, std::optional<std::string> location);
    void set_name(std::string name) { name_ = std::move(name); }
    void set_description(std::string description) { description_ = std::move(description); }

    std::size_t num_places() const noexcept { return place_names_.size(); }
    std::size_t num_transitions() const noexcept { return transition_names_.size(); }
    const std::string& place_name(PlaceIndex p) const { return place_names_.at(p); }
    const std::string& transition_name(TransitionIndex t) const { return transition_names_.at(t); }
    const std::string& label(TransitionIndex t) const { return labels_.at(t); }
    const std::optional<std::string>& location(TransitionIndex t) const { return locations_.at(t); }
    std::optional<PlaceIndex> find_place(std::string_view name) const;
    std::optional<TransitionIndex> find_transition(std::string_view name) const;
    /// Distinct labels in transition order.
    std::vector<std::string> label_alphabet() const;

    /// F(p,t)
    Weight consume(PlaceIndex p, TransitionIndex t) const;
    /// F(t,p)
    Weight produce(TransitionIndex t, PlaceIndex p) const;
    /// Nonzero (place, weight) pairs consumed/produced by t, ordered by place.
    const std::vector<std::pair<PlaceIndex, Weight>>& preset(TransitionIndex t) const { return pre_.at(t); }
    const std::vector<std::pair<PlaceIndex, Weight>>& postset(TransitionIndex t) const { return post_.at(t); }
    /// Transitions producing into / consuming from p, ascending.
    const std::vector<TransitionIndex>& place_preset(PlaceIndex p) const;
    const std::vector<TransitionIndex>& place_postset(PlaceIndex p) const;

    const Marking& initial_marking() const noexcept { return initial_; }

    const std::string& name() const noexcept { return name_; }
    const std::string& description() const noexcept { return description_; }

  private:
    struct PlaceAdjacency {
        std::vector<std::vector<TransitionIndex>> producers;
        std::vector<std::vector<TransitionIndex>> consumers;
    };

    void check_name(const std::string& name) const;
    void invalidate();
    const PlaceAdjacency& adjacency() const;
    static void set_weight(std::vector<std::pair<PlaceIndex, Weight>>& arcs, PlaceIndex p, Weight w);

    std::vector<std::string> place_names_;
    std::vector<std::string> transition_names_;
    std::vector<std::string> labels_;
    std::vector<std::optional<std::string>> locations_;
    std::unordered_map<std::string, PlaceIndex> place_lookup_;
    std::unordered_map<std::string, TransitionIndex> transition_lookup_;
    std::vector<std::vector<std::pair<PlaceIndex, Weight>>> pre_;
    std::vector<std::vector<std::pair<PlaceIndex, Weight>>> post_;
    Marking initial_;
    std::string name_;
    std::string description_;

    mutable std::mutex cache_mutex_;
    mutable std::shared_ptr<const PlaceAdjacency> cache_;
};

} // namespace apt
