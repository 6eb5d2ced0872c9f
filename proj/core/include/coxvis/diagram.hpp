#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxvis/coxeter_system.hpp"

namespace coxvis {

/// Largest rank accepted by the exhaustive subset enumerations.
inline constexpr std::size_t kMaxExhaustiveRank = 20;

/// Connected components of the presentation diagram induced on `within`,
/// ordered by smallest member.
std::vector<GeneratorSubset> diagram_components(const CoxeterSystem& sys, GeneratorSubset within);

/// Connected components of the Coxeter graph (edges where m != 2) on `within`.
std::vector<GeneratorSubset> coxeter_graph_components(const CoxeterSystem& sys, GeneratorSubset within);

bool is_complete(const CoxeterSystem& sys, GeneratorSubset set);

/// True iff removing `cut` from the diagram on `ambient` leaves at least two
/// vertices that do not all lie in one component. Requires cut ⊆ ambient.
bool separates(const CoxeterSystem& sys, GeneratorSubset ambient, GeneratorSubset cut);

/// `separates` over the whole generator set; throws DomainError when A = S.
bool is_separating(const CoxeterSystem& sys, GeneratorSubset cut);

/// All inclusion-minimal separating subsets in canonical order. Exhaustive;
/// requires 2 <= |S| <= kMaxExhaustiveRank.
std::vector<GeneratorSubset> minimal_separators(const CoxeterSystem& sys);

/// Maximal complete subsets of the diagram on `within` (Bron–Kerbosch with
/// pivoting), canonical order.
std::vector<GeneratorSubset> maximal_cliques(const CoxeterSystem& sys, GeneratorSubset within);
inline std::vector<GeneratorSubset> maximal_cliques(const CoxeterSystem& sys) {
  return maximal_cliques(sys, sys.all());
}

/// An induced cycle of length >= 4 in the diagram on `within`, listed in cycle
/// order, or nullopt if the induced diagram is chordal.
std::optional<std::vector<GenIndex>> find_chordless_cycle(const CoxeterSystem& sys, GeneratorSubset within);

/// Graphviz rendering of the presentation diagram; infinite pairs are omitted.
std::string export_dot(const CoxeterSystem& sys);

}  // namespace coxvis
