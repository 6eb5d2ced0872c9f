#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace coxvis {

/// Index of a generator in its system's declared order.
using GenIndex = std::uint8_t;

inline constexpr std::size_t kMaxGenerators = 64;

/// A set of generator indices of one Coxeter system, stored as a bit mask.
///
/// Canonical order: the sorted index sequences compared lexicographically,
/// so {0,1} < {0,2} < {1} and the empty set precedes everything.
class GeneratorSubset {
 public:
  constexpr GeneratorSubset() = default;
  constexpr explicit GeneratorSubset(std::uint64_t mask) : mask_(mask) {}
  GeneratorSubset(std::initializer_list<GenIndex> members) {
    for (GenIndex g : members) insert(g);
  }

  static constexpr GeneratorSubset full(std::size_t rank) {
    return GeneratorSubset(rank >= 64 ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << rank) - 1);
  }
  static constexpr GeneratorSubset singleton(GenIndex g) {
    return GeneratorSubset(std::uint64_t{1} << g);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  constexpr bool contains(GenIndex g) const { return (mask_ >> g) & 1U; }
  constexpr void insert(GenIndex g) { mask_ |= std::uint64_t{1} << g; }
  constexpr void erase(GenIndex g) { mask_ &= ~(std::uint64_t{1} << g); }

  constexpr bool subset_of(GeneratorSubset other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool proper_subset_of(GeneratorSubset other) const {
    return subset_of(other) && mask_ != other.mask_;
  }
  constexpr bool intersects(GeneratorSubset other) const {
    return (mask_ & other.mask_) != 0;
  }

  /// Smallest member; undefined on the empty set.
  constexpr GenIndex first() const {
    return static_cast<GenIndex>(std::countr_zero(mask_));
  }

  std::vector<GenIndex> members() const {
    std::vector<GenIndex> out;
    out.reserve(size());
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
      out.push_back(static_cast<GenIndex>(std::countr_zero(m)));
    }
    return out;
  }

  friend constexpr GeneratorSubset operator|(GeneratorSubset a, GeneratorSubset b) {
    return GeneratorSubset(a.mask_ | b.mask_);
  }
  friend constexpr GeneratorSubset operator&(GeneratorSubset a, GeneratorSubset b) {
    return GeneratorSubset(a.mask_ & b.mask_);
  }
  friend constexpr GeneratorSubset operator-(GeneratorSubset a, GeneratorSubset b) {
    return GeneratorSubset(a.mask_ & ~b.mask_);
  }
  GeneratorSubset& operator|=(GeneratorSubset o) { mask_ |= o.mask_; return *this; }
  GeneratorSubset& operator&=(GeneratorSubset o) { mask_ &= o.mask_; return *this; }

  friend constexpr bool operator==(GeneratorSubset a, GeneratorSubset b) = default;

  friend constexpr std::strong_ordering operator<=>(GeneratorSubset a,
                                                    GeneratorSubset b) {
    const std::uint64_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return std::strong_ordering::equal;
    const int i = std::countr_zero(diff);
    // Members below i agree. The side owning i compares against the other
    // side's next member (> i), or wins as the longer sequence if there is none.
    const std::uint64_t above = i == 63 ? 0 : ~((std::uint64_t{2} << i) - 1);
    if ((a.mask_ >> i) & 1U) {
      return (b.mask_ & above) != 0 ? std::strong_ordering::less
                                    : std::strong_ordering::greater;
    }
    return (a.mask_ & above) != 0 ? std::strong_ordering::greater
                                  : std::strong_ordering::less;
  }

 private:
  std::uint64_t mask_ = 0;
};

/// Orders by size first, then canonically. Used where "smallest first" matters.
struct BySizeThenCanonical {
  bool operator()(GeneratorSubset a, GeneratorSubset b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

}  // namespace coxvis
