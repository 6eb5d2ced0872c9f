#include "coxvis/decomposition.hpp"

#include <algorithm>
#include <unordered_set>

#include "coxvis/diagram.hpp"
#include "coxvis/errors.hpp"

namespace coxvis {

std::string EndsClass::describe(const CoxeterSystem& sys) const {
  switch (verdict) {
    case EndsVerdict::Zero: return "zero-ended (" + finiteness.describe() + ")";
    case EndsVerdict::One: return "one-ended (by elimination)";
    case EndsVerdict::Two:
      return "two-ended witness x=" + sys.name(x) + " y=" + sys.name(y) + " H=" + format_subset(sys, h);
    case EndsVerdict::Infinite: return "infinitely-many-ended witness=" + format_subset(sys, separator);
  }
  return "";
}

std::optional<TwoEndedPattern> two_ended_pattern(const CoxeterSystem& sys, GeneratorSubset within) {
  const auto members = within.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const GenIndex x = members[i];
      const GenIndex y = members[j];
      if (sys.order(x, y) != kInfiniteOrder) continue;
      const GeneratorSubset rest = within - GeneratorSubset{x, y};
      bool commuting = true;
      for (GenIndex hh : rest.members()) {
        if (sys.order(x, hh) != 2 || sys.order(y, hh) != 2) {
          commuting = false;
          break;
        }
      }
      if (commuting && is_finite(sys, rest).finite) return TwoEndedPattern{x, y, rest};
    }
  }
  return std::nullopt;
}

std::vector<GeneratorSubset> complete_subsets(const CoxeterSystem& sys, GeneratorSubset within) {
  std::unordered_set<std::uint64_t> seen{0};
  std::vector<GeneratorSubset> out{GeneratorSubset{}};
  for (GeneratorSubset clique : maximal_cliques(sys, within)) {
    // Walk all submasks of the clique.
    const std::uint64_t full = clique.mask();
    for (std::uint64_t m = full; m != 0; m = (m - 1) & full) {
      if (seen.insert(m).second) out.emplace_back(m);
    }
  }
  std::sort(out.begin(), out.end(), BySizeThenCanonical{});
  return out;
}

std::optional<GeneratorSubset> least_finite_separator(const CoxeterSystem& sys, GeneratorSubset within) {
  if (within.size() < 2) return std::nullopt;
  for (GeneratorSubset b : complete_subsets(sys, within)) {
    if (b == within) continue;
    if (separates(sys, within, b) && is_finite(sys, b).finite) return b;
  }
  return std::nullopt;
}

EndsClass ends(const CoxeterSystem& sys) {
  if (sys.rank() == 0) throw DomainError("ends need at least one generator");
  EndsClass out;
  out.finiteness = is_finite(sys, sys.all());
  if (out.finiteness.finite) {
    out.verdict = EndsVerdict::Zero;
    return out;
  }
  // The two-ended pattern also has a finite complete separator, so test it first.
  if (auto p = two_ended_pattern(sys, sys.all())) {
    out.verdict = EndsVerdict::Two;
    out.x = p->x;
    out.y = p->y;
    out.h = p->h;
    return out;
  }
  for (GeneratorSubset b : complete_subsets(sys, sys.all())) {
    if (b == sys.all()) continue;
    ++out.subsets_checked;
    if (separates(sys, sys.all(), b) && is_finite(sys, b).finite) {
      out.verdict = EndsVerdict::Infinite;
      out.separator = b;
      return out;
    }
  }
  out.verdict = EndsVerdict::One;
  return out;
}

bool recheck_ends_witness(const CoxeterSystem& sys, const EndsClass& e) {
  switch (e.verdict) {
    case EndsVerdict::Zero: {
      const auto v = is_finite(sys, sys.all());
      return v.finite && v.order == e.finiteness.order;
    }
    case EndsVerdict::Two: {
      if (e.x == e.y || sys.order(e.x, e.y) != kInfiniteOrder) return false;
      if ((e.h | GeneratorSubset{e.x, e.y}) != sys.all() || e.h.contains(e.x) || e.h.contains(e.y)) return false;
      for (GenIndex hh : e.h.members()) {
        if (sys.order(e.x, hh) != 2 || sys.order(e.y, hh) != 2) return false;
      }
      return is_finite(sys, e.h).finite;
    }
    case EndsVerdict::Infinite:
      return e.separator != sys.all() && is_complete(sys, e.separator) && separates(sys, sys.all(), e.separator) &&
             is_finite(sys, e.separator).finite && !is_finite(sys, sys.all()).finite;
    case EndsVerdict::One: {
      if (is_finite(sys, sys.all()).finite || two_ended_pattern(sys, sys.all())) return false;
      for (GeneratorSubset b : complete_subsets(sys, sys.all())) {
        if (b != sys.all() && separates(sys, sys.all(), b) && is_finite(sys, b).finite) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

// Replaces vertex `v` by the visual splitting of its group over `cut`,
// re-attaching each incident edge to the first new vertex containing its label.
void split_vertex(const CoxeterSystem& sys, VisualGoG& g, std::size_t v, GeneratorSubset cut,
                  std::size_t& next_id) {
  const GeneratorSubset label = g.vertices[v].label;
  const std::string old_id = g.vertices[v].id;
  const auto comps = diagram_components(sys, label - cut);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < comps.size(); ++i) ids.push_back("n" + std::to_string(next_id++));

  g.vertices[v] = {ids[0], comps[0] | cut};
  for (std::size_t i = 1; i < comps.size(); ++i) g.vertices.push_back({ids[i], comps[i] | cut});
  for (auto& e : g.edges) {
    const bool at_from = e.from == old_id;
    const bool at_to = e.to == old_id;
    if (!at_from && !at_to) continue;
    std::size_t target = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (e.label.subset_of(comps[i] | cut)) {
        target = i;
        break;
      }
    }
    (at_from ? e.from : e.to) = ids[target];
  }
  for (std::size_t i = 1; i < comps.size(); ++i) {
    g.edges.push_back({"m" + std::to_string(next_id++), ids[0], ids[i], cut});
  }
}

template <typename ChooseCut>
VisualGoG refine_by_splitting(const CoxeterSystem& sys, ChooseCut choose) {
  VisualGoG g;
  g.vertices.push_back({"root", sys.all()});
  std::size_t next_id = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      if (auto cut = choose(g.vertices[v].label)) {
        split_vertex(sys, g, v, *cut, next_id);
        changed = true;
        break;
      }
    }
  }
  return canonicalize(reduce(std::move(g)));
}

}  // namespace

VisualGoG visual_dunwoody(const CoxeterSystem& sys) {
  return refine_by_splitting(sys, [&](GeneratorSubset label) { return least_finite_separator(sys, label); });
}

std::vector<GeneratorSubset> maximal_fa(const CoxeterSystem& sys) { return maximal_cliques(sys); }

std::string VirtualFreeness::describe(const CoxeterSystem& sys) const {
  if (virtually_free) return "yes";
  if (infinite_clique) return "no (clique of infinite type: " + format_subset(sys, *infinite_clique) + ")";
  if (chordless_cycle) {
    std::string out = "no (induced " + std::to_string(chordless_cycle->size()) + "-circuit:";
    for (GenIndex g : *chordless_cycle) out += " " + sys.name(g);
    return out + ")";
  }
  return "no";
}

VirtualFreeness is_virtually_free(const CoxeterSystem& sys) {
  VirtualFreeness out;
  const VisualGoG dd = visual_dunwoody(sys);
  out.dunwoody_all_finite = std::all_of(dd.vertices.begin(), dd.vertices.end(),
                                        [&](const GogVertex& v) { return is_finite(sys, v.label).finite; });
  for (GeneratorSubset c : maximal_cliques(sys)) {
    if (!is_finite(sys, c).finite) {
      out.infinite_clique = c;
      return out;
    }
  }
  if (auto cycle = find_chordless_cycle(sys, sys.all())) {
    out.chordless_cycle = std::move(cycle);
    return out;
  }
  out.virtually_free = true;
  out.witness = refine_by_splitting(sys, [&](GeneratorSubset label) -> std::optional<GeneratorSubset> {
    for (GenIndex x : label.members()) {
      const GeneratorSubset star = (sys.diagram_neighbors(x) & label) | GeneratorSubset::singleton(x);
      if (star == label) continue;
      const GeneratorSubset k = diagram_components(sys, label - star).front();
      GeneratorSubset s1;
      for (GenIndex u : star.members()) {
        if (sys.diagram_neighbors(u).intersects(k)) s1.insert(u);
      }
      return s1;
    }
    return std::nullopt;
  });
  return out;
}

std::vector<GeneratorSubset> vs_candidates(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  if (n > kMaxExhaustiveRank) {
    throw DomainError("visually stable candidates are exhaustive and limited to " +
                      std::to_string(kMaxExhaustiveRank) + " generators");
  }
  // Special subgroups that are finite or two-ended.
  std::vector<GeneratorSubset> small;
  std::unordered_set<std::uint64_t> seen;
  for (GeneratorSubset b : complete_subsets(sys, sys.all())) {
    if (is_finite(sys, b).finite && seen.insert(b.mask()).second) small.push_back(b);
  }
  for (GenIndex x = 0; x < n; ++x) {
    for (GenIndex y = x + 1; y < n; ++y) {
      if (sys.order(x, y) != kInfiniteOrder) continue;
      GeneratorSubset common;
      for (GenIndex t = 0; t < n; ++t) {
        if (t != x && t != y && sys.order(x, t) == 2 && sys.order(y, t) == 2) common.insert(t);
      }
      for (GeneratorSubset h : complete_subsets(sys, common)) {
        const GeneratorSubset b = h | GeneratorSubset{x, y};
        if (is_finite(sys, h).finite && seen.insert(b.mask()).second) small.push_back(b);
      }
    }
  }

  std::vector<std::uint64_t> masks(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) > std::popcount(b);
  });
  std::vector<GeneratorSubset> found;
  for (std::uint64_t m : masks) {
    const GeneratorSubset a(m);
    if (std::any_of(found.begin(), found.end(), [&](GeneratorSubset f) { return a.subset_of(f); })) continue;
    const bool separated = std::any_of(small.begin(), small.end(), [&](GeneratorSubset b) {
      return b.proper_subset_of(a) && separates(sys, a, b);
    });
    if (!separated) found.push_back(a);
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace coxvis
