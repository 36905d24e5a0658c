#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dynkin {

// A subset of the state space {0, ..., n-1}. Used as a hitting-time strategy:
// the player stops at the first time the chain enters the set.
class StoppingSet {
 public:
  StoppingSet() = default;
  explicit StoppingSet(std::size_t universe) : bits_(universe, false) {}
  StoppingSet(std::size_t universe, std::initializer_list<std::size_t> members);
  StoppingSet(std::size_t universe, std::span<const std::size_t> members);

  static StoppingSet all(std::size_t universe);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool contains(std::size_t x) const { return x < bits_.size() && bits_[x]; }

  void insert(std::size_t x);
  void erase(std::size_t x);

  // Sorted ascending; the canonical representation.
  std::vector<std::size_t> members() const;

  bool subset_of(const StoppingSet& other) const;
  bool disjoint_from(const StoppingSet& other) const;

  StoppingSet complement() const;
  StoppingSet& operator|=(const StoppingSet& other);
  StoppingSet& operator&=(const StoppingSet& other);
  StoppingSet& operator-=(const StoppingSet& other);

  friend StoppingSet operator|(StoppingSet a, const StoppingSet& b) { return a |= b; }
  friend StoppingSet operator&(StoppingSet a, const StoppingSet& b) { return a &= b; }
  friend StoppingSet operator-(StoppingSet a, const StoppingSet& b) { return a -= b; }
  friend bool operator==(const StoppingSet&, const StoppingSet&) = default;

 private:
  void check_universe(const StoppingSet& other) const;

  std::vector<bool> bits_;
};

}  // namespace dynkin
