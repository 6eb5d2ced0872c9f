#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxvis/coxeter_system.hpp"
#include "coxvis/finite_type.hpp"
#include "coxvis/graph_of_groups.hpp"

namespace coxvis {

enum class EndsVerdict { Zero, One, Two, Infinite };

/// Number of ends with a recheckable witness:
///   Zero     — `finiteness` of ⟨S⟩;
///   Two      — S = {x,y} ∪ h with m(x,y) = ∞, ⟨h⟩ finite, all cross orders 2;
///   Infinite — `separator`, a complete separating subset generating a finite group;
///   One      — by elimination: none of the finite complete subsets separates.
struct EndsClass {
  EndsVerdict verdict = EndsVerdict::One;
  FinitenessVerdict finiteness;
  GenIndex x = 0;
  GenIndex y = 0;
  GeneratorSubset h;
  GeneratorSubset separator;
  std::size_t subsets_checked = 0;

  std::string describe(const CoxeterSystem& sys) const;
};

struct TwoEndedPattern {
  GenIndex x;
  GenIndex y;
  GeneratorSubset h;
};

/// Finds {x,y} ⊆ within with m(x,y) = ∞ such that the rest H of `within` is
/// finite and commutes with both (orders 2).
std::optional<TwoEndedPattern> two_ended_pattern(const CoxeterSystem& sys, GeneratorSubset within);

/// Complete subsets of the diagram on `within`, smallest first then canonical.
std::vector<GeneratorSubset> complete_subsets(const CoxeterSystem& sys, GeneratorSubset within);

/// Smallest (then canonically least) complete subset generating a finite group
/// that separates the diagram on `within`.
std::optional<GeneratorSubset> least_finite_separator(const CoxeterSystem& sys, GeneratorSubset within);

EndsClass ends(const CoxeterSystem& sys);
bool recheck_ends_witness(const CoxeterSystem& sys, const EndsClass& ends);

/// Visual decomposition with finite edge groups and finite or one-ended
/// vertex groups, obtained by splitting vertex groups over their least finite
/// separator until none has one. Reduced and canonicalised.
VisualGoG visual_dunwoody(const CoxeterSystem& sys);

/// Maximal FA special subgroups: exactly the maximal cliques.
std::vector<GeneratorSubset> maximal_fa(const CoxeterSystem& sys);

struct VirtualFreeness {
  bool virtually_free = false;
  std::optional<VisualGoG> witness;                     // all vertex groups finite
  std::optional<GeneratorSubset> infinite_clique;       // failure: a clique of infinite type
  std::optional<std::vector<GenIndex>> chordless_cycle;  // failure: induced circuit of length >= 4
  bool dunwoody_all_finite = false;                     // independent route; must agree

  std::string describe(const CoxeterSystem& sys) const;
};

/// Finite maximal cliques plus a chordal diagram. The witness splits each
/// non-complete vertex group A over the vertices of st(x) adjacent to the first
/// component of A − st(x), for the first x ∈ A with a non-neighbour.
VirtualFreeness is_virtually_free(const CoxeterSystem& sys);

/// Maximal A ⊆ S whose diagram is not separated by any B ⊊ A with ⟨B⟩
/// finite or two-ended. Exhaustive; |S| <= kMaxExhaustiveRank.
std::vector<GeneratorSubset> vs_candidates(const CoxeterSystem& sys);

}  // namespace coxvis
