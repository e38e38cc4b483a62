#include "apt/petri_net.hpp"

#include <algorithm>

#include "apt/error.hpp"

namespace apt {

namespace {

std::size_t hash_tokens(const std::vector<std::int64_t>& tokens) noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto t : tokens) {
        h ^= static_cast<std::size_t>(t) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace

bool Marking::covers(const Marking& other) const {
    for (std::size_t p = 0; p < tokens_.size(); ++p)
        if (tokens_[p] < other.tokens_[p])
            return false;
    return true;
}

Marking& Marking::operator+=(const Marking& other) {
    for (std::size_t p = 0; p < tokens_.size(); ++p)
        tokens_[p] += other.tokens_[p];
    return *this;
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept { return hash_tokens(m.tokens()); }

bool OmegaMarking::has_omega() const {
    return std::any_of(tokens_.begin(), tokens_.end(), [](std::int64_t t) { return t == omega; });
}

bool OmegaMarking::covers(const OmegaMarking& other) const {
    for (std::size_t p = 0; p < tokens_.size(); ++p)
        if (tokens_[p] < other.tokens_[p])
            return false;
    return true;
}

std::size_t OmegaMarkingHash::operator()(const OmegaMarking& m) const noexcept { return hash_tokens(m.tokens()); }

PetriNet::PetriNet(const PetriNet& other)
    : place_names_(other.place_names_), transition_names_(other.transition_names_), labels_(other.labels_),
      locations_(other.locations_), place_lookup_(other.place_lookup_),
      transition_lookup_(other.transition_lookup_), pre_(other.pre_), post_(other.post_),
      initial_(other.initial_), name_(other.name_), description_(other.description_) {}

PetriNet& PetriNet::operator=(const PetriNet& other) {
    if (this != &other) {
        PetriNet copy(other);
        *this = std::move(copy);
    }
    return *this;
}

PetriNet::PetriNet(PetriNet&& other) noexcept
    : place_names_(std::move(other.place_names_)), transition_names_(std::move(other.transition_names_)),
      labels_(std::move(other.labels_)), locations_(std::move(other.locations_)),
      place_lookup_(std::move(other.place_lookup_)), transition_lookup_(std::move(other.transition_lookup_)),
      pre_(std::move(other.pre_)), post_(std::move(other.post_)), initial_(std::move(other.initial_)),
      name_(std::move(other.name_)), description_(std::move(other.description_)) {}

PetriNet& PetriNet::operator=(PetriNet&& other) noexcept {
    place_names_ = std::move(other.place_names_);
    transition_names_ = std::move(other.transition_names_);
    labels_ = std::move(other.labels_);
    locations_ = std::move(other.locations_);
    place_lookup_ = std::move(other.place_lookup_);
    transition_lookup_ = std::move(other.transition_lookup_);
    pre_ = std::move(other.pre_);
    post_ = std::move(other.post_);
    initial_ = std::move(other.initial_);
    name_ = std::move(other.name_);
    description_ = std::move(other.description_);
    invalidate();
    return *this;
}

void PetriNet::check_name(const std::string& name) const {
    if (place_lookup_.contains(name) || transition_lookup_.contains(name))
        throw InputError("duplicate node name '" + name + "'");
}

void PetriNet::invalidate() {
    std::lock_guard lock(cache_mutex_);
    cache_.reset();
}

PlaceIndex PetriNet::add_place(const std::string& name, std::int64_t initial_tokens) {
    check_name(name);
    if (initial_tokens < 0)
        throw InputError("negative token count for place '" + name + "'");
    PlaceIndex p = place_names_.size();
    place_names_.push_back(name);
    place_lookup_.emplace(name, p);
    std::vector<std::int64_t> tokens = initial_.tokens();
    tokens.push_back(initial_tokens);
    initial_ = Marking(std::move(tokens));
    invalidate();
    return p;
}

TransitionIndex PetriNet::add_transition(const std::string& name, std::optional<std::string> label) {
    check_name(name);
    TransitionIndex t = transition_names_.size();
    transition_names_.push_back(name);
    labels_.push_back(label.value_or(name));
    locations_.emplace_back();
    transition_lookup_.emplace(name, t);
    pre_.emplace_back();
    post_.emplace_back();
    invalidate();
    return t;
}

void PetriNet::set_weight(std::vector<std::pair<PlaceIndex, Weight>>& arcs, PlaceIndex p, Weight w) {
    if (w < 0)
        throw InputError("negative arc weight");
    auto it = std::lower_bound(arcs.begin(), arcs.end(), p,
                               [](const auto& entry, PlaceIndex place) { return entry.first < place; });
    if (it != arcs.end() && it->first == p) {
        if (w == 0)
            arcs.erase(it);
        else
            it->second = w;
    } else if (w != 0) {
        arcs.insert(it, {p, w});
    }
}

void PetriNet::set_consume(PlaceIndex p, TransitionIndex t, Weight w) {
    if (p >= num_places())
        throw InputError("unknown place index");
    set_weight(pre_.at(t), p, w);
    invalidate();
}

void PetriNet::set_produce(TransitionIndex t, PlaceIndex p, Weight w) {
    if (p >= num_places())
        throw InputError("unknown place index");
    set_weight(post_.at(t), p, w);
    invalidate();
}

void PetriNet::set_initial_tokens(PlaceIndex p, std::int64_t tokens) {
    if (tokens < 0)
        throw InputError("negative token count");
    initial_[p] = tokens;
}

void PetriNet::set_label(TransitionIndex t, std::string label) { labels_.at(t) = std::move(label); }

void PetriNet::set_location(TransitionIndex t, std::optional<std::string> location) {
    locations_.at(t) = std::move(location);
}

std::optional<PlaceIndex> PetriNet::find_place(std::string_view name) const {
    auto it = place_lookup_.find(std::string(name));
    if (it == place_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::optional<TransitionIndex> PetriNet::find_transition(std::string_view name) const {
    auto it = transition_lookup_.find(std::string(name));
    if (it == transition_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::string> PetriNet::label_alphabet() const {
    std::vector<std::string> alphabet;
    for (const auto& l : labels_)
        if (std::find(alphabet.begin(), alphabet.end(), l) == alphabet.end())
            alphabet.push_back(l);
    return alphabet;
}

Weight PetriNet::consume(PlaceIndex p, TransitionIndex t) const {
    for (auto [place, w] : pre_.at(t))
        if (place == p)
            return w;
    return 0;
}

Weight PetriNet::produce(TransitionIndex t, PlaceIndex p) const {
    for (auto [place, w] : post_.at(t))
        if (place == p)
            return w;
    return 0;
}

const PetriNet::PlaceAdjacency& PetriNet::adjacency() const {
    std::lock_guard lock(cache_mutex_);
    if (!cache_) {
        auto adj = std::make_shared<PlaceAdjacency>();
        adj->producers.resize(num_places());
        adj->consumers.resize(num_places());
        for (TransitionIndex t = 0; t < num_transitions(); ++t) {
            for (auto [p, w] : pre_[t])
                adj->consumers[p].push_back(t);
            for (auto [p, w] : post_[t])
                adj->producers[p].push_back(t);
        }
        cache_ = std::move(adj);
    }
    return *cache_;
}

const std::vector<TransitionIndex>& PetriNet::place_preset(PlaceIndex p) const { return adjacency().producers.at(p); }

const std::vector<TransitionIndex>& PetriNet::place_postset(PlaceIndex p) const { return adjacency().consumers.at(p); }

} // namespace apt
