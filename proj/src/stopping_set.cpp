#include "dynkin/stopping_set.hpp"

#include "dynkin/errors.hpp"

namespace dynkin {

StoppingSet::StoppingSet(std::size_t universe,
                         std::initializer_list<std::size_t> members)
    : StoppingSet(universe, std::span<const std::size_t>(members.begin(), members.size())) {}

StoppingSet::StoppingSet(std::size_t universe, std::span<const std::size_t> members)
    : bits_(universe, false) {
  for (std::size_t x : members) insert(x);
}

StoppingSet StoppingSet::all(std::size_t universe) {
  StoppingSet s(universe);
  s.bits_.assign(universe, true);
  return s;
}

std::size_t StoppingSet::size() const {
  std::size_t n = 0;
  for (bool b : bits_) n += b ? 1 : 0;
  return n;
}

void StoppingSet::insert(std::size_t x) {
  if (x >= bits_.size()) throw DimensionMismatch(bits_.size(), x + 1);
  bits_[x] = true;
}

void StoppingSet::erase(std::size_t x) {
  if (x < bits_.size()) bits_[x] = false;
}

std::vector<std::size_t> StoppingSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

bool StoppingSet::subset_of(const StoppingSet& other) const {
  check_universe(other);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

bool StoppingSet::disjoint_from(const StoppingSet& other) const {
  check_universe(other);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && other.bits_[i]) return false;
  return true;
}

StoppingSet StoppingSet::complement() const {
  StoppingSet out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = !bits_[i];
  return out;
}

StoppingSet& StoppingSet::operator|=(const StoppingSet& other) {
  check_universe(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] || other.bits_[i];
  return *this;
}

StoppingSet& StoppingSet::operator&=(const StoppingSet& other) {
  check_universe(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] && other.bits_[i];
  return *this;
}

StoppingSet& StoppingSet::operator-=(const StoppingSet& other) {
  check_universe(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] && !other.bits_[i];
  return *this;
}

void StoppingSet::check_universe(const StoppingSet& other) const {
  if (other.bits_.size() != bits_.size())
    throw DimensionMismatch(bits_.size(), other.bits_.size());
}

}  // namespace dynkin
