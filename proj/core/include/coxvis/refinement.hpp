#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coxvis/graph_of_groups.hpp"
#include "coxvis/word_engine.hpp"

namespace coxvis {

/// A vertex or edge group of a splitting, given by generating words.
struct SplittingVertex {
  std::string id;
  std::vector<Word> words;
};

struct SplittingEdge {
  std::string id;
  std::string from;
  std::string to;
  std::vector<Word> words;
};

/// A tree of (not necessarily special) subgroups of W, e.g. the image of a
/// visual splitting under an automorphism.
struct AbstractSplitting {
  std::vector<SplittingVertex> vertices;
  std::vector<SplittingEdge> edges;
};

/// Parses the `.split` format:
///   vertex <id> words <w>, <w>, ...
///   edge <id> <vid> <vid> words <w>, ...
/// Words are space-separated generator names; `e` is the identity.
/// Throws ParseError on syntax errors, unknown generators, or empty word lists.
AbstractSplitting parse_splitting(const CoxeterSystem& sys, std::string_view text);
std::string emit_splitting(const CoxeterSystem& sys, const AbstractSplitting& split);

/// The same tree with each special subgroup written by its generators
/// (the identity word for the trivial group).
AbstractSplitting splitting_from_visual(const CoxeterSystem& sys, const VisualGoG& g);

/// Throws DomainError unless the splitting is a nonempty tree with unique ids
/// and nonempty word lists.
void check_splitting(const AbstractSplitting& split);

enum class RefinementStatus { Refined, Inconclusive };

/// A vertex g·Λ(V) of the Bass–Serre tree of the input splitting.
struct TreeVertexRecord {
  GroupElement coset_rep;
  std::string splitting_vertex;
  GeneratorSubset stabilizer;  // generators certified to fix it
  std::size_t cost = 0;
};

struct RefinementOutcome {
  RefinementStatus status = RefinementStatus::Inconclusive;
  std::optional<VisualGoG> decomposition;  // canonicalised; only when Refined
  /// Per generator, the first tree vertex it was certified to fix
  /// (index into `tree`); nullopt when no certificate was found.
  std::vector<std::optional<std::size_t>> generator_certificates;
  /// Tree vertices of the spanned subtree, before collapsing and reduction.
  std::vector<TreeVertexRecord> tree;
  std::size_t radius = 0;
  std::size_t vertices_explored = 0;
  std::string reason;  // why the outcome is Inconclusive
};

/// Refines a splitting of W into a visual decomposition by searching its
/// Bass–Serre tree.
///
/// Tree vertices g·Λ(V) are explored outward from the identity transversal in
/// order of cost, where a step through coset representative k ∈ Λ(V) costs
/// max(1, |k|) and |k| counts generating words. The search stops once every
/// generator, and both ends of every diagram edge, are certified to fix some
/// explored vertex. A certificate for s at g·Λ(V) is an expression of g⁻¹sg
/// as a product of at most `radius` generating words of Λ(V). The subtree
/// spanned by the certificate vertices is labelled by stabilising generators;
/// empty vertices are collapsed, the result reduced and validated.
///
/// Returns Inconclusive whenever a certificate is missing within `radius` or
/// the assembled tree fails validation; never a wrong decomposition.
RefinementOutcome refine_to_visual(const WordEngine& engine, const AbstractSplitting& split, std::size_t radius);

}  // namespace coxvis
