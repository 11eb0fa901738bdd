#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace pseudostar {

using LeafLabel = int;

/// Set of leaf labels drawn from 1..64, stored as a bitmask (bit l-1 for
/// label l). For sets of equal size the integer order of the mask is the
/// colexicographic order of the sets.
class LeafSet {
 public:
  static constexpr LeafLabel kMaxLabel = 64;

  constexpr LeafSet() = default;
  constexpr explicit LeafSet(std::uint64_t bits) : bits_(bits) {}
  LeafSet(std::initializer_list<LeafLabel> labels) {
    for (LeafLabel l : labels) insert(l);
  }

  /// {1, ..., n}
  static constexpr LeafSet first_n(int n) {
    return LeafSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static LeafSet from_labels(const std::vector<LeafLabel>& labels) {
    LeafSet s;
    for (LeafLabel l : labels) s.insert(l);
    return s;
  }

  static constexpr bool valid_label(LeafLabel l) { return l >= 1 && l <= kMaxLabel; }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(LeafLabel l) const { return (bits_ >> (l - 1)) & 1U; }
  constexpr bool contains(LeafSet other) const { return (other.bits_ & ~bits_) == 0; }
  constexpr bool intersects(LeafSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr void insert(LeafLabel l) { bits_ |= std::uint64_t{1} << (l - 1); }
  constexpr void erase(LeafLabel l) { bits_ &= ~(std::uint64_t{1} << (l - 1)); }
  constexpr LeafSet with(LeafLabel l) const {
    LeafSet s = *this;
    s.insert(l);
    return s;
  }
  constexpr LeafSet without(LeafLabel l) const {
    LeafSet s = *this;
    s.erase(l);
    return s;
  }

  /// Smallest label; requires non-empty.
  constexpr LeafLabel min() const { return std::countr_zero(bits_) + 1; }
  constexpr LeafLabel max() const { return 64 - std::countl_zero(bits_); }

  friend constexpr LeafSet operator|(LeafSet a, LeafSet b) { return LeafSet(a.bits_ | b.bits_); }
  friend constexpr LeafSet operator&(LeafSet a, LeafSet b) { return LeafSet(a.bits_ & b.bits_); }
  friend constexpr LeafSet operator-(LeafSet a, LeafSet b) { return LeafSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(LeafSet, LeafSet) = default;
  friend constexpr auto operator<=>(LeafSet a, LeafSet b) { return a.bits_ <=> b.bits_; }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b) + 1);
  }

  std::vector<LeafLabel> members() const {
    std::vector<LeafLabel> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](LeafLabel l) { out.push_back(l); });
    return out;
  }

  /// "{1,2,5}"
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

inline std::string LeafSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](LeafLabel l) {
    if (!first) out += ',';
    out += std::to_string(l);
    first = false;
  });
  out += '}';
  return out;
}

}  // namespace pseudostar
