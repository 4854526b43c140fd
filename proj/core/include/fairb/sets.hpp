#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fairb {

/// A finite universe of states indexed 0..size-1. Identity is nominal: two
/// spaces are the same space iff they carry the same id (and size).
class StateSpace {
 public:
  StateSpace(std::string id, std::size_t size);
  /// Labels double as the size; one label per state.
  StateSpace(std::string id, std::vector<std::string> labels);

  const std::string& id() const noexcept { return data_->id; }
  std::size_t size() const noexcept { return data_->size; }
  bool has_labels() const noexcept { return !data_->labels.empty(); }
  /// Display string for a state; "#i" when the space is unlabelled.
  std::string label(std::size_t state) const;

  friend bool operator==(const StateSpace& a, const StateSpace& b) noexcept {
    return a.data_ == b.data_ || (a.data_->id == b.data_->id && a.data_->size == b.data_->size);
  }

 private:
  struct Data {
    std::string id;
    std::size_t size;
    std::vector<std::string> labels;
  };
  std::shared_ptr<const Data> data_;
};

void require_same_space(const StateSpace& a, const StateSpace& b);

/// Immutable subset of a StateSpace, stored as a dense bit vector.
class StateSet {
 public:
  explicit StateSet(StateSpace space);

  static StateSet empty(const StateSpace& space) { return StateSet(space); }
  static StateSet full(const StateSpace& space);
  static StateSet of(const StateSpace& space, std::initializer_list<std::size_t> members);
  static StateSet from_indices(const StateSpace& space, std::span<const std::size_t> members);
  /// Bit i of mask is state i. Requires space.size() <= 64.
  static StateSet from_mask(const StateSpace& space, std::uint64_t mask);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t universe_size() const noexcept { return space_.size(); }

  bool contains(std::size_t state) const noexcept {
    return state < space_.size() && ((words_[state / 64] >> (state % 64)) & 1U) != 0;
  }
  std::size_t count() const noexcept;
  bool is_empty() const noexcept;
  bool is_full() const noexcept;
  std::optional<std::size_t> first() const noexcept;
  std::vector<std::size_t> members() const;
  std::uint64_t to_mask() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int off = __builtin_ctzll(bits);
        fn(w * 64 + static_cast<std::size_t>(off));
        bits &= bits - 1;
      }
    }
  }

  StateSet with(std::size_t state) const;
  StateSet without(std::size_t state) const;

  StateSet unite(const StateSet& other) const;
  StateSet intersect(const StateSet& other) const;
  StateSet difference(const StateSet& other) const;
  StateSet complement() const;
  bool is_subset_of(const StateSet& other) const;
  bool is_equal(const StateSet& other) const;
  bool intersects(const StateSet& other) const;

  friend StateSet operator|(const StateSet& a, const StateSet& b) { return a.unite(b); }
  friend StateSet operator&(const StateSet& a, const StateSet& b) { return a.intersect(b); }
  friend StateSet operator-(const StateSet& a, const StateSet& b) { return a.difference(b); }
  friend StateSet operator~(const StateSet& a) { return a.complement(); }
  friend bool operator==(const StateSet& a, const StateSet& b) { return a.is_equal(b); }

  /// "{0,2,3}" or labels when the space carries them.
  std::string to_string() const;

 private:
  friend class StateSetBuilder;
  void trim() noexcept;

  StateSpace space_;
  std::vector<std::uint64_t> words_;
};

/// Accumulates members and yields an immutable StateSet.
class StateSetBuilder {
 public:
  explicit StateSetBuilder(const StateSpace& space) : set_(space) {}
  explicit StateSetBuilder(StateSet seed) : set_(std::move(seed)) {}

  StateSetBuilder& insert(std::size_t state);
  StateSetBuilder& erase(std::size_t state);
  bool contains(std::size_t state) const noexcept { return set_.contains(state); }
  StateSet build() && { return std::move(set_); }
  StateSet snapshot() const { return set_; }

 private:
  StateSet set_;
};

/// A binary relation from one space to another (possibly the same), stored as
/// forward and backward adjacency lists. Partial and non-functional relations
/// are allowed.
class StateRelation {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  StateRelation(StateSpace source, StateSpace target, std::span<const Pair> pairs);
  static StateRelation identity(const StateSpace& space);
  static StateRelation empty(const StateSpace& source, const StateSpace& target);

  const StateSpace& source() const noexcept { return data_->source; }
  const StateSpace& target() const noexcept { return data_->target; }
  std::size_t pair_count() const noexcept { return data_->fwd_targets.size(); }

  std::span<const std::uint32_t> successors(std::size_t s) const;
  std::span<const std::uint32_t> predecessors(std::size_t t) const;
  bool contains(std::size_t s, std::size_t t) const;
  std::vector<Pair> pairs() const;

  /// { t | exists s in a, (s,t) in rel }
  StateSet image(const StateSet& a) const;
  /// { s | exists t in b, (s,t) in rel }
  StateSet inverse_image(const StateSet& b) const;
  /// Source states with at least one successor.
  StateSet domain() const;
  bool is_total() const noexcept;
  std::optional<std::size_t> first_orphan() const noexcept;
  StateRelation inverse() const;

 private:
  struct Data {
    StateSpace source;
    StateSpace target;
    std::vector<std::uint32_t> fwd_offsets;
    std::vector<std::uint32_t> fwd_targets;
    std::vector<std::uint32_t> bwd_offsets;
    std::vector<std::uint32_t> bwd_sources;
  };
  explicit StateRelation(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

}  // namespace fairb
