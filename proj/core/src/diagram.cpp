#include "coxvis/diagram.hpp"

#include <algorithm>
#include <sstream>

#include "coxvis/errors.hpp"

namespace coxvis {

namespace {

template <typename Neighbors>
std::vector<GeneratorSubset> components(GeneratorSubset within, Neighbors neighbors) {
  std::vector<GeneratorSubset> out;
  GeneratorSubset left = within;
  while (!left.empty()) {
    GeneratorSubset comp = GeneratorSubset::singleton(left.first());
    GeneratorSubset frontier = comp;
    while (!frontier.empty()) {
      GeneratorSubset next;
      for (GenIndex g : frontier.members()) next |= neighbors(g);
      next = (next & within) - comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    left = left - comp;
  }
  return out;
}

bool connected(const CoxeterSystem& sys, GeneratorSubset set) {
  if (set.empty()) return true;
  GeneratorSubset comp = GeneratorSubset::singleton(set.first());
  GeneratorSubset frontier = comp;
  while (!frontier.empty()) {
    GeneratorSubset next;
    for (GenIndex g : frontier.members()) next |= sys.diagram_neighbors(g);
    next = (next & set) - comp;
    comp |= next;
    frontier = next;
  }
  return comp == set;
}

void bron_kerbosch(const CoxeterSystem& sys, GeneratorSubset r, GeneratorSubset p, GeneratorSubset x,
                   std::vector<GeneratorSubset>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  // Pivot on the vertex of P ∪ X with most neighbours in P.
  GenIndex pivot = (p | x).first();
  std::size_t best = 0;
  for (GenIndex u : (p | x).members()) {
    const std::size_t d = (p & sys.diagram_neighbors(u)).size();
    if (d >= best) {
      best = d;
      pivot = u;
    }
  }
  for (GenIndex v : (p - sys.diagram_neighbors(pivot)).members()) {
    const GeneratorSubset nv = sys.diagram_neighbors(v);
    bron_kerbosch(sys, r | GeneratorSubset::singleton(v), p & nv, x & nv, out);
    p.erase(v);
    x.insert(v);
  }
}

}  // namespace

std::vector<GeneratorSubset> diagram_components(const CoxeterSystem& sys, GeneratorSubset within) {
  return components(within, [&](GenIndex g) { return sys.diagram_neighbors(g); });
}

std::vector<GeneratorSubset> coxeter_graph_components(const CoxeterSystem& sys, GeneratorSubset within) {
  return components(within, [&](GenIndex g) { return sys.coxeter_neighbors(g); });
}

bool is_complete(const CoxeterSystem& sys, GeneratorSubset set) {
  for (GenIndex g : set.members()) {
    if (!(set - GeneratorSubset::singleton(g)).subset_of(sys.diagram_neighbors(g))) return false;
  }
  return true;
}

bool separates(const CoxeterSystem& sys, GeneratorSubset ambient, GeneratorSubset cut) {
  const GeneratorSubset rest = ambient - cut;
  return rest.size() >= 2 && !connected(sys, rest);
}

bool is_separating(const CoxeterSystem& sys, GeneratorSubset cut) {
  if (!cut.subset_of(sys.all())) throw DomainError("subset member outside the generator set");
  if (cut == sys.all()) throw DomainError("a separating subset must be a proper subset of S");
  return separates(sys, sys.all(), cut);
}

std::vector<GeneratorSubset> minimal_separators(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  if (n < 2) throw DomainError("separator enumeration needs at least two generators");
  if (n > kMaxExhaustiveRank) {
    throw DomainError("separator enumeration is exhaustive and limited to " +
                      std::to_string(kMaxExhaustiveRank) + " generators");
  }
  // Sizes ascending: any separating set containing a found separator is not minimal.
  std::vector<std::vector<std::uint64_t>> by_size(n + 1);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    by_size[static_cast<std::size_t>(std::popcount(m))].push_back(m);
  }
  std::vector<GeneratorSubset> found;
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    for (std::uint64_t m : by_size[k]) {
      const GeneratorSubset cand(m);
      bool dominated = false;
      for (GeneratorSubset f : found) {
        if (f.subset_of(cand)) {
          dominated = true;
          break;
        }
      }
      if (!dominated && separates(sys, sys.all(), cand)) found.push_back(cand);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<GeneratorSubset> maximal_cliques(const CoxeterSystem& sys, GeneratorSubset within) {
  std::vector<GeneratorSubset> out;
  if (within.empty()) return out;
  bron_kerbosch(sys, {}, within, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<GenIndex>> find_chordless_cycle(const CoxeterSystem& sys, GeneratorSubset within) {
  // Any chordless cycle through v with cycle-neighbours u, w is a shortest
  // u-w path avoiding the rest of v's closed neighbourhood, closed up by v.
  for (GenIndex v : within.members()) {
    const GeneratorSubset nv = sys.diagram_neighbors(v) & within;
    const auto nbrs = nv.members();
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const GenIndex u = nbrs[i];
        const GenIndex w = nbrs[j];
        if (sys.diagram_neighbors(u).contains(w)) continue;
        const GeneratorSubset allowed =
            (within - nv - GeneratorSubset::singleton(v)) | GeneratorSubset{u, w};
        std::vector<int> parent(sys.rank(), -1);
        std::vector<GenIndex> queue{u};
        GeneratorSubset seen = GeneratorSubset::singleton(u);
        for (std::size_t q = 0; q < queue.size() && !seen.contains(w); ++q) {
          const GenIndex a = queue[q];
          for (GenIndex b : ((sys.diagram_neighbors(a) & allowed) - seen).members()) {
            seen.insert(b);
            parent[b] = a;
            queue.push_back(b);
          }
        }
        if (!seen.contains(w)) continue;
        std::vector<GenIndex> path;
        for (int c = w; c != -1; c = parent[static_cast<std::size_t>(c)]) path.push_back(static_cast<GenIndex>(c));
        std::reverse(path.begin(), path.end());
        std::vector<GenIndex> cycle{v};
        cycle.insert(cycle.end(), path.begin(), path.end());
        return cycle;
      }
    }
  }
  return std::nullopt;
}

std::string export_dot(const CoxeterSystem& sys) {
  std::ostringstream out;
  out << "graph presentation {\n";
  for (const auto& g : sys.generators()) out << "  \"" << g.name << "\";\n";
  for (GenIndex s = 0; s < sys.rank(); ++s) {
    for (GenIndex t = s + 1; t < sys.rank(); ++t) {
      const EdgeOrder m = sys.order(s, t);
      if (m == kInfiniteOrder) continue;
      out << "  \"" << sys.name(s) << "\" -- \"" << sys.name(t) << "\" [label=\"" << m << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace coxvis
