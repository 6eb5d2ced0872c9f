#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coxvis/coxeter_system.hpp"

namespace coxvis {

using Letter = GenIndex;
/// A word over S. Generators are involutions, so there are no inverse letters.
using Word = std::vector<Letter>;

/// Parses whitespace-separated generator names; a lone `e` (when no generator
/// is named `e`) is the empty word. Throws DomainError on unknown names.
Word parse_word(const CoxeterSystem& sys, std::string_view text);
/// Space-separated names, `e` for the empty word.
std::string format_word(const CoxeterSystem& sys, std::span<const Letter> word);

/// An element of W held as its ShortLex normal form (shortest, then
/// lexicographically least by generator index). Only WordEngine creates these.
class GroupElement {
 public:
  GroupElement() = default;  // identity

  const Word& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity() const { return word_.empty(); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  /// ShortLex order.
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
    return a.word_ < b.word_;
  }

 private:
  friend class WordEngine;
  explicit GroupElement(Word w) : word_(std::move(w)) {}
  Word word_;
};

/// Dense handle for an element inside one engine; equal handles denote equal
/// elements. Identity is 0.
enum class ElementId : std::uint32_t {};

struct EngineLimits {
  /// Commutation classes of the braid class visited while appending one letter.
  std::size_t braid_closure_cap = 1'000'000;
};

/// Minimal-length representative of the left coset rep·⟨subgroup⟩.
struct CosetDescriptor {
  GroupElement rep;
  GeneratorSubset subgroup;
};

/// w = left · middle · right with left ∈ ⟨I⟩, right ∈ ⟨J⟩ and middle the
/// minimal-length element of ⟨I⟩w⟨J⟩.
struct DoubleCosetFactorization {
  GroupElement left;
  GroupElement middle;
  GroupElement right;
};

/// The subgroup conjugator·⟨core⟩·conjugator⁻¹.
struct ConjugateSpecial {
  GroupElement conjugator;
  GeneratorSubset core;
};

/// conjugator·⟨core⟩·conjugator⁻¹, the intersection of two ConjugateSpecials.
struct IntersectionResult {
  GroupElement conjugator;
  GeneratorSubset core;
};

struct BallOptions {
  std::optional<std::size_t> radius;  // nullopt: until the frontier empties
  std::size_t cap = 200'000;          // element count; exceeding it throws
};

struct CayleyBall {
  std::vector<GroupElement> elements;  // breadth-first, ShortLex within a sphere
  bool complete = false;               // true when the whole subgroup was reached
};

/// Solves the word problem of one Coxeter system.
///
/// Normal forms are built one letter at a time: appending s to a reduced
/// normal form u explores the braid class of u·s (braid moves plus adjacent
/// cancellations) and keeps the ShortLex-least word. Words differing only by
/// commutations are handled as one class, so right-angled parts stay cheap.
/// Results are memoised in a trie of normal forms, which is prefix-closed. The memo is guarded by a
/// shared mutex, so one engine may be used from several threads.
class WordEngine {
 public:
  explicit WordEngine(CoxeterSystem sys, EngineLimits limits = {});
  ~WordEngine();
  WordEngine(WordEngine&&) noexcept;
  WordEngine& operator=(WordEngine&&) noexcept;

  const CoxeterSystem& system() const;

  // Handle-level arithmetic.
  static constexpr ElementId identity_id() { return ElementId{0}; }
  ElementId multiply(ElementId x, Letter s) const;
  ElementId multiply(ElementId x, std::span<const Letter> word) const;
  ElementId multiply(ElementId x, ElementId y) const;
  ElementId left_multiply(Letter s, ElementId x) const;
  ElementId inverse(ElementId x) const;
  ElementId id_of(const GroupElement& g) const;
  GroupElement element(ElementId x) const;
  std::size_t length(ElementId x) const;

  GroupElement normal_form(std::span<const Letter> word) const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& g) const;
  bool words_equal(std::span<const Letter> a, std::span<const Letter> b) const;
  bool is_geodesic(std::span<const Letter> word) const;
  /// Letters of any geodesic for the element; independent of the geodesic chosen.
  GeneratorSubset support(std::span<const Letter> word) const;

  bool is_right_descent(const GroupElement& g, Letter s) const;
  bool is_left_descent(const GroupElement& g, Letter s) const;

  CosetDescriptor coset_min_rep(const GroupElement& y, GeneratorSubset subgroup) const;
  GroupElement double_coset_min_rep(GeneratorSubset left, const GroupElement& w,
                                    GeneratorSubset right) const;
  DoubleCosetFactorization factor_double_coset(GeneratorSubset left, const GroupElement& w,
                                               GeneratorSubset right) const;

  /// g⟨I⟩g⁻¹ ∩ h⟨J⟩h⁻¹ = f⟨K⟩f⁻¹ with g⁻¹h = a·d·b factored over ⟨I⟩d⟨J⟩,
  /// K = I ∩ dJd⁻¹ and f = g·a. Exact: only length-decreasing reductions run.
  IntersectionResult intersect_special_conjugates(const ConjugateSpecial& p,
                                                  const ConjugateSpecial& q) const;

  /// Breadth-first enumeration of ⟨subgroup⟩. Throws DomainError past the cap.
  CayleyBall cayley_ball(GeneratorSubset subgroup, BallOptions options = {}) const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace coxvis
