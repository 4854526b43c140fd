#include "fairb/sets.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "fairb/error.hpp"

namespace fairb {

namespace {

std::size_t word_count(std::size_t size) { return (size + 63) / 64; }

}  // namespace

StateSpace::StateSpace(std::string id, std::size_t size)
    : data_(std::make_shared<const Data>(Data{std::move(id), size, {}})) {
  if (size == 0) throw InvalidModel("state space '" + data_->id + "' must have at least one state");
  if (size > std::numeric_limits<std::uint32_t>::max())
    throw InvalidModel("state space '" + data_->id + "' is too large");
}

StateSpace::StateSpace(std::string id, std::vector<std::string> labels) : StateSpace(id, labels.size()) {
  data_ = std::make_shared<const Data>(Data{std::move(id), labels.size(), std::move(labels)});
}

std::string StateSpace::label(std::size_t state) const {
  if (state < data_->labels.size()) return data_->labels[state];
  return "#" + std::to_string(state);
}

void require_same_space(const StateSpace& a, const StateSpace& b) {
  if (!(a == b)) throw SpaceMismatch(a.id(), b.id());
}

// ---------------------------------------------------------------------------

StateSet::StateSet(StateSpace space) : space_(std::move(space)), words_(word_count(space_.size()), 0) {}

StateSet StateSet::full(const StateSpace& space) {
  StateSet s(space);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.trim();
  return s;
}

StateSet StateSet::of(const StateSpace& space, std::initializer_list<std::size_t> members) {
  return from_indices(space, std::span<const std::size_t>(members.begin(), members.size()));
}

StateSet StateSet::from_indices(const StateSpace& space, std::span<const std::size_t> members) {
  StateSetBuilder b(space);
  for (auto m : members) b.insert(m);
  return std::move(b).build();
}

StateSet StateSet::from_mask(const StateSpace& space, std::uint64_t mask) {
  if (space.size() > 64) throw SizeGateExceeded("from_mask needs a space of at most 64 states");
  StateSet s(space);
  s.words_[0] = mask;
  s.trim();
  return s;
}

void StateSet::trim() noexcept {
  const std::size_t rem = space_.size() % 64;
  if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

std::size_t StateSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool StateSet::is_empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool StateSet::is_full() const noexcept { return count() == space_.size(); }

std::optional<std::size_t> StateSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  return std::nullopt;
}

std::vector<std::size_t> StateSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t s) { out.push_back(s); });
  return out;
}

std::uint64_t StateSet::to_mask() const {
  if (space_.size() > 64) throw SizeGateExceeded("to_mask needs a space of at most 64 states");
  return words_[0];
}

StateSet StateSet::with(std::size_t state) const { return std::move(StateSetBuilder(*this).insert(state)).build(); }

StateSet StateSet::without(std::size_t state) const { return std::move(StateSetBuilder(*this).erase(state)).build(); }

StateSet StateSet::unite(const StateSet& other) const {
  require_same_space(space_, other.space_);
  StateSet out(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
  return out;
}

StateSet StateSet::intersect(const StateSet& other) const {
  require_same_space(space_, other.space_);
  StateSet out(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
  return out;
}

StateSet StateSet::difference(const StateSet& other) const {
  require_same_space(space_, other.space_);
  StateSet out(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~other.words_[i];
  return out;
}

StateSet StateSet::complement() const {
  StateSet out(*this);
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

bool StateSet::is_subset_of(const StateSet& other) const {
  require_same_space(space_, other.space_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

bool StateSet::is_equal(const StateSet& other) const {
  require_same_space(space_, other.space_);
  return words_ == other.words_;
}

bool StateSet::intersects(const StateSet& other) const {
  require_same_space(space_, other.space_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

std::string StateSet::to_string() const {
  std::string out = "{";
  bool first_member = true;
  for_each([&](std::size_t s) {
    if (!first_member) out += space_.has_labels() ? "; " : ",";
    first_member = false;
    out += space_.has_labels() ? space_.label(s) : std::to_string(s);
  });
  return out + "}";
}

StateSetBuilder& StateSetBuilder::insert(std::size_t state) {
  if (state >= set_.space_.size())
    throw Error("state " + std::to_string(state) + " out of range for space '" + set_.space_.id() + "'");
  set_.words_[state / 64] |= std::uint64_t{1} << (state % 64);
  return *this;
}

StateSetBuilder& StateSetBuilder::erase(std::size_t state) {
  if (state < set_.space_.size()) set_.words_[state / 64] &= ~(std::uint64_t{1} << (state % 64));
  return *this;
}

// ---------------------------------------------------------------------------

namespace {

void build_csr(std::size_t nodes, std::span<const StateRelation::Pair> pairs, bool forward,
               std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& adj) {
  offsets.assign(nodes + 1, 0);
  for (const auto& [s, t] : pairs) ++offsets[(forward ? s : t) + 1];
  for (std::size_t i = 0; i < nodes; ++i) offsets[i + 1] += offsets[i];
  adj.assign(pairs.size(), 0);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [s, t] : pairs) {
    const auto from = forward ? s : t;
    adj[cursor[from]++] = static_cast<std::uint32_t>(forward ? t : s);
  }
}

}  // namespace

StateRelation::StateRelation(StateSpace source, StateSpace target, std::span<const Pair> pairs) {
  std::vector<Pair> sorted(pairs.begin(), pairs.end());
  for (const auto& [s, t] : sorted) {
    if (s >= source.size() || t >= target.size())
      throw Error("relation pair (" + std::to_string(s) + "," + std::to_string(t) + ") out of range for '" +
                  source.id() + "' -> '" + target.id() + "'");
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  auto data = std::make_shared<Data>(Data{std::move(source), std::move(target), {}, {}, {}, {}});
  build_csr(data->source.size(), sorted, true, data->fwd_offsets, data->fwd_targets);
  build_csr(data->target.size(), sorted, false, data->bwd_offsets, data->bwd_sources);
  data_ = std::move(data);
}

StateRelation StateRelation::identity(const StateSpace& space) {
  std::vector<Pair> pairs;
  pairs.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) pairs.emplace_back(i, i);
  return StateRelation(space, space, pairs);
}

StateRelation StateRelation::empty(const StateSpace& source, const StateSpace& target) {
  return StateRelation(source, target, std::span<const Pair>{});
}

std::span<const std::uint32_t> StateRelation::successors(std::size_t s) const {
  const auto& d = *data_;
  if (s >= d.source.size()) return {};
  return {d.fwd_targets.data() + d.fwd_offsets[s], d.fwd_offsets[s + 1] - d.fwd_offsets[s]};
}

std::span<const std::uint32_t> StateRelation::predecessors(std::size_t t) const {
  const auto& d = *data_;
  if (t >= d.target.size()) return {};
  return {d.bwd_sources.data() + d.bwd_offsets[t], d.bwd_offsets[t + 1] - d.bwd_offsets[t]};
}

bool StateRelation::contains(std::size_t s, std::size_t t) const {
  const auto succ = successors(s);
  return std::binary_search(succ.begin(), succ.end(), static_cast<std::uint32_t>(t));
}

std::vector<StateRelation::Pair> StateRelation::pairs() const {
  std::vector<Pair> out;
  out.reserve(pair_count());
  for (std::size_t s = 0; s < source().size(); ++s)
    for (auto t : successors(s)) out.emplace_back(s, t);
  return out;
}

StateSet StateRelation::image(const StateSet& a) const {
  require_same_space(a.space(), source());
  StateSetBuilder out(target());
  a.for_each([&](std::size_t s) {
    for (auto t : successors(s)) out.insert(t);
  });
  return std::move(out).build();
}

StateSet StateRelation::inverse_image(const StateSet& b) const {
  require_same_space(b.space(), target());
  StateSetBuilder out(source());
  b.for_each([&](std::size_t t) {
    for (auto s : predecessors(t)) out.insert(s);
  });
  return std::move(out).build();
}

StateSet StateRelation::domain() const {
  StateSetBuilder out(source());
  for (std::size_t s = 0; s < source().size(); ++s)
    if (!successors(s).empty()) out.insert(s);
  return std::move(out).build();
}

std::optional<std::size_t> StateRelation::first_orphan() const noexcept {
  const auto& d = *data_;
  for (std::size_t s = 0; s < d.source.size(); ++s)
    if (d.fwd_offsets[s] == d.fwd_offsets[s + 1]) return s;
  return std::nullopt;
}

bool StateRelation::is_total() const noexcept { return !first_orphan().has_value(); }

StateRelation StateRelation::inverse() const {
  auto p = pairs();
  for (auto& [s, t] : p) std::swap(s, t);
  return StateRelation(target(), source(), p);
}

}  // namespace fairb
