#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxvis/coxeter_system.hpp"

namespace coxvis {

struct GogVertex {
  std::string id;
  GeneratorSubset label;

  friend bool operator==(const GogVertex&, const GogVertex&) = default;
};

struct GogEdge {
  std::string id;
  std::string from;
  std::string to;
  GeneratorSubset label;

  friend bool operator==(const GogEdge&, const GogEdge&) = default;
};

/// A tree of special subgroups with inclusion edge maps. Labels may repeat
/// until the tree is reduced.
struct VisualGoG {
  std::vector<GogVertex> vertices;
  std::vector<GogEdge> edges;

  std::size_t vertex_index(std::string_view id) const;  // throws DomainError if absent
  std::size_t edge_index(std::string_view id) const;    // throws DomainError if absent

  friend bool operator==(const VisualGoG&, const VisualGoG&) = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::pair<GenIndex, GenIndex>> uncovered_edges;  // diagram edges in no vertex label
  std::vector<GenIndex> bad_generators;  // carrier empty or not a subtree

  std::string describe(const CoxeterSystem& sys) const;
};

/// Throws DomainError unless g is a nonempty tree with unique ids, edge labels
/// included in both endpoint labels, and all labels inside S.
void check_structure(const CoxeterSystem& sys, const VisualGoG& g);

/// Subtree criterion: every diagram edge lies in some vertex label and every
/// generator's carrier (vertices and edges whose label contains it) is a
/// nonempty subtree. Structural defects throw instead (see check_structure).
ValidationReport validate_visual(const CoxeterSystem& sys, const VisualGoG& g);

/// Collapses edges whose label equals an endpoint label, absorbing that
/// endpoint into the other, until none is left.
VisualGoG reduce(VisualGoG g);

/// Contracts the named edges; each contracted cluster keeps the id of its
/// first vertex and the union of its labels.
VisualGoG collapse_edges(const VisualGoG& g, const std::set<std::string>& edge_ids);

/// Visual splitting over a separating subset A: one vertex per component C of
/// the diagram minus A, labelled C ∪ A, joined to the first such vertex by
/// edges labelled A.
VisualGoG split_over(const CoxeterSystem& sys, GeneratorSubset cut);

/// For every x, y outside label(e) on opposite sides of e, checks that
/// label(e) separates x from y in the presentation diagram.
bool check_edge_separation(const CoxeterSystem& sys, const VisualGoG& g, std::string_view edge_id);

/// Id of the first vertex whose label contains the complete subset `clique`.
std::string clique_vertex_cover(const CoxeterSystem& sys, const VisualGoG& g, GeneratorSubset clique);

/// Renumbers vertices v0, v1, ... sorted by label and edges e0, e1, ... by
/// endpoints, orienting each edge from its lower-numbered endpoint.
VisualGoG canonicalize(const VisualGoG& g);

VisualGoG parse_gog(const CoxeterSystem& sys, std::string_view text);
std::string emit_gog(const CoxeterSystem& sys, const VisualGoG& g);
std::string export_dot_gog(const CoxeterSystem& sys, const VisualGoG& g);

/// One-line amalgam notation "{s1,s2} *{s2} {s2,s3}" when the tree is a path,
/// read from the end with the canonically smaller label; empty otherwise.
std::string describe_path(const CoxeterSystem& sys, const VisualGoG& g);

}  // namespace coxvis
