#include "coxvis/graph_of_groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "coxvis/diagram.hpp"
#include "coxvis/errors.hpp"

namespace coxvis {

std::size_t VisualGoG::vertex_index(std::string_view id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id == id) return i;
  }
  throw DomainError("unknown vertex id '" + std::string(id) + "'");
}

std::size_t VisualGoG::edge_index(std::string_view id) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].id == id) return i;
  }
  throw DomainError("unknown edge id '" + std::string(id) + "'");
}

namespace {

struct UnionFind {
  std::vector<std::size_t> up;
  explicit UnionFind(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    up[b] = a;  // the smaller index stays the root
    return true;
  }
};

struct Endpoints {
  std::size_t from;
  std::size_t to;
};

std::vector<Endpoints> endpoints(const VisualGoG& g) {
  std::vector<Endpoints> out;
  out.reserve(g.edges.size());
  for (const auto& e : g.edges) out.push_back({g.vertex_index(e.from), g.vertex_index(e.to)});
  return out;
}

// Vertices on the `from` side of edge `cut`.
std::vector<bool> side_of(const VisualGoG& g, const std::vector<Endpoints>& ends, std::size_t cut) {
  std::vector<bool> mark(g.vertices.size(), false);
  std::vector<std::size_t> stack{ends[cut].from};
  mark[ends[cut].from] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t e = 0; e < ends.size(); ++e) {
      if (e == cut) continue;
      std::size_t other;
      if (ends[e].from == v) other = ends[e].to;
      else if (ends[e].to == v) other = ends[e].from;
      else continue;
      if (!mark[other]) {
        mark[other] = true;
        stack.push_back(other);
      }
    }
  }
  return mark;
}

std::string subset_braces(const CoxeterSystem& sys, GeneratorSubset set) {
  std::string out = "{";
  for (GenIndex g : set.members()) out += " " + sys.name(g);
  out += set.empty() ? "}" : " }";
  return out;
}

}  // namespace

std::string ValidationReport::describe(const CoxeterSystem& sys) const {
  if (valid) return "valid";
  std::string out = "invalid";
  for (const auto& [s, t] : uncovered_edges) {
    out += "; diagram edge " + sys.name(s) + "-" + sys.name(t) + " lies in no vertex group";
  }
  for (GenIndex s : bad_generators) out += "; carrier of " + sys.name(s) + " is not a nonempty subtree";
  return out;
}

void check_structure(const CoxeterSystem& sys, const VisualGoG& g) {
  if (g.vertices.empty()) throw DomainError("graph of groups has no vertices");
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (!g.vertices[i].label.subset_of(sys.all())) throw DomainError("vertex label outside S");
    for (std::size_t j = 0; j < i; ++j) {
      if (g.vertices[j].id == g.vertices[i].id) throw DomainError("duplicate vertex id '" + g.vertices[i].id + "'");
    }
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (g.edges[j].id == g.edges[i].id) throw DomainError("duplicate edge id '" + g.edges[i].id + "'");
    }
  }
  if (g.edges.size() + 1 != g.vertices.size()) throw DomainError("graph is not a tree (edge count)");
  const auto ends = endpoints(g);
  UnionFind uf(g.vertices.size());
  for (std::size_t e = 0; e < ends.size(); ++e) {
    const auto& edge = g.edges[e];
    if (ends[e].from == ends[e].to) throw DomainError("edge '" + edge.id + "' is a loop");
    if (!uf.unite(ends[e].from, ends[e].to)) throw DomainError("graph is not a tree (cycle through '" + edge.id + "')");
    if (!edge.label.subset_of(g.vertices[ends[e].from].label) || !edge.label.subset_of(g.vertices[ends[e].to].label)) {
      throw DomainError("edge '" + edge.id + "' label is not contained in both endpoint labels");
    }
  }
}

ValidationReport validate_visual(const CoxeterSystem& sys, const VisualGoG& g) {
  check_structure(sys, g);
  ValidationReport report;
  for (GenIndex s = 0; s < sys.rank(); ++s) {
    for (GenIndex t : (sys.diagram_neighbors(s) - GeneratorSubset::full(s + 1u)).members()) {
      const GeneratorSubset pair{s, t};
      const bool covered = std::any_of(g.vertices.begin(), g.vertices.end(),
                                       [&](const GogVertex& v) { return pair.subset_of(v.label); });
      if (!covered) report.uncovered_edges.emplace_back(s, t);
    }
  }
  // A subforest of a tree is connected iff it has one more vertex than edges.
  for (GenIndex s = 0; s < sys.rank(); ++s) {
    const auto nv = std::count_if(g.vertices.begin(), g.vertices.end(),
                                  [&](const GogVertex& v) { return v.label.contains(s); });
    const auto ne = std::count_if(g.edges.begin(), g.edges.end(),
                                  [&](const GogEdge& e) { return e.label.contains(s); });
    if (nv == 0 || ne + 1 != nv) report.bad_generators.push_back(s);
  }
  report.valid = report.uncovered_edges.empty() && report.bad_generators.empty();
  return report;
}

VisualGoG reduce(VisualGoG g) {
  while (true) {
    const auto ends = endpoints(g);
    std::optional<std::size_t> hit;
    std::size_t absorbed = 0;
    std::size_t survivor = 0;
    for (std::size_t e = 0; e < g.edges.size() && !hit; ++e) {
      const auto& label = g.edges[e].label;
      if (label == g.vertices[ends[e].to].label) {
        hit = e;
        absorbed = ends[e].to;
        survivor = ends[e].from;
      } else if (label == g.vertices[ends[e].from].label) {
        hit = e;
        absorbed = ends[e].from;
        survivor = ends[e].to;
      }
    }
    if (!hit) return g;
    const std::string gone = g.vertices[absorbed].id;
    const std::string kept = g.vertices[survivor].id;
    g.vertices[survivor].label |= g.vertices[absorbed].label;
    g.edges.erase(g.edges.begin() + static_cast<std::ptrdiff_t>(*hit));
    g.vertices.erase(g.vertices.begin() + static_cast<std::ptrdiff_t>(absorbed));
    for (auto& e : g.edges) {
      if (e.from == gone) e.from = kept;
      if (e.to == gone) e.to = kept;
    }
  }
}

VisualGoG collapse_edges(const VisualGoG& g, const std::set<std::string>& edge_ids) {
  for (const auto& id : edge_ids) g.edge_index(id);
  const auto ends = endpoints(g);
  UnionFind uf(g.vertices.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (edge_ids.contains(g.edges[e].id)) uf.unite(ends[e].from, ends[e].to);
  }
  VisualGoG out;
  std::vector<std::size_t> new_index(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const std::size_t root = uf.find(v);
    if (root == v) {
      new_index[v] = out.vertices.size();
      out.vertices.push_back(g.vertices[v]);
    }
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    new_index[v] = new_index[uf.find(v)];
    out.vertices[new_index[v]].label |= g.vertices[v].label;
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (edge_ids.contains(g.edges[e].id)) continue;
    GogEdge edge = g.edges[e];
    edge.from = out.vertices[new_index[ends[e].from]].id;
    edge.to = out.vertices[new_index[ends[e].to]].id;
    out.edges.push_back(std::move(edge));
  }
  return out;
}

VisualGoG split_over(const CoxeterSystem& sys, GeneratorSubset cut) {
  if (!is_separating(sys, cut)) {
    throw DomainError(format_subset(sys, cut) + " does not separate the presentation diagram");
  }
  const auto comps = diagram_components(sys, sys.all() - cut);
  VisualGoG out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out.vertices.push_back({"v" + std::to_string(i), comps[i] | cut});
  }
  for (std::size_t i = 1; i < comps.size(); ++i) {
    out.edges.push_back({"e" + std::to_string(i - 1), "v0", "v" + std::to_string(i), cut});
  }
  return out;
}

bool check_edge_separation(const CoxeterSystem& sys, const VisualGoG& g, std::string_view edge_id) {
  const std::size_t e = g.edge_index(edge_id);
  if (!validate_visual(sys, g).valid) throw DomainError("graph of groups is not a visual decomposition");
  const auto ends = endpoints(g);
  const auto side = side_of(g, ends, e);
  const GeneratorSubset cut = g.edges[e].label;
  GeneratorSubset near, far;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    (side[v] ? near : far) |= g.vertices[v].label;
  }
  near = near - cut;
  far = far - cut;
  if (near.intersects(far)) return false;
  const auto comps = diagram_components(sys, sys.all() - cut);
  for (GeneratorSubset c : comps) {
    if (c.intersects(near) && c.intersects(far)) return false;
  }
  return true;
}

std::string clique_vertex_cover(const CoxeterSystem& sys, const VisualGoG& g, GeneratorSubset clique) {
  if (!is_complete(sys, clique)) throw DomainError(format_subset(sys, clique) + " is not complete in the diagram");
  if (!validate_visual(sys, g).valid) throw DomainError("graph of groups is not a visual decomposition");
  for (const auto& v : g.vertices) {
    if (clique.subset_of(v.label)) return v.id;
  }
  throw DomainError("no vertex label contains " + format_subset(sys, clique));
}

VisualGoG canonicalize(const VisualGoG& g) {
  const auto ends = endpoints(g);
  std::vector<std::size_t> order(g.vertices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.vertices[a].label < g.vertices[b].label;
  });
  std::vector<std::size_t> rank(g.vertices.size());
  VisualGoG out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = i;
    out.vertices.push_back({"v" + std::to_string(i), g.vertices[order[i]].label});
  }
  struct Tmp {
    std::size_t a, b;
    GeneratorSubset label;
  };
  std::vector<Tmp> tmp;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    std::size_t a = rank[ends[e].from];
    std::size_t b = rank[ends[e].to];
    if (b < a) std::swap(a, b);
    tmp.push_back({a, b, g.edges[e].label});
  }
  std::stable_sort(tmp.begin(), tmp.end(), [](const Tmp& x, const Tmp& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.label < y.label;
  });
  for (std::size_t i = 0; i < tmp.size(); ++i) {
    out.edges.push_back({"e" + std::to_string(i), out.vertices[tmp[i].a].id, out.vertices[tmp[i].b].id, tmp[i].label});
  }
  return out;
}

VisualGoG parse_gog(const CoxeterSystem& sys, std::string_view text) {
  VisualGoG g;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string spaced;
    for (char c : raw) {
      if (c == '{' || c == '}') {
        spaced += ' ';
        spaced += c;
        spaced += ' ';
      } else {
        spaced += c;
      }
    }
    std::istringstream ls(spaced);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;

    const bool is_vertex = tokens[0] == "vertex";
    const bool is_edge = tokens[0] == "edge";
    if (!is_vertex && !is_edge) throw ParseError(line_no, "expected 'vertex' or 'edge'");
    const std::size_t head = is_vertex ? 2 : 4;
    if (tokens.size() < head + 2 || tokens[head] != "{" || tokens.back() != "}") {
      throw ParseError(line_no, is_vertex ? "expected 'vertex <id> { gens }'" : "expected 'edge <id> <vid> <vid> { gens }'");
    }
    GeneratorSubset label;
    for (std::size_t i = head + 1; i + 1 < tokens.size(); ++i) {
      auto s = sys.find(tokens[i]);
      if (!s) throw ParseError(line_no, "unknown generator '" + tokens[i] + "'");
      label.insert(*s);
    }
    if (is_vertex) {
      g.vertices.push_back({tokens[1], label});
    } else {
      g.edges.push_back({tokens[1], tokens[2], tokens[3], label});
    }
  }
  return g;
}

std::string emit_gog(const CoxeterSystem& sys, const VisualGoG& g) {
  std::string out;
  for (const auto& v : g.vertices) out += "vertex " + v.id + " " + subset_braces(sys, v.label) + "\n";
  for (const auto& e : g.edges) {
    out += "edge " + e.id + " " + e.from + " " + e.to + " " + subset_braces(sys, e.label) + "\n";
  }
  return out;
}

std::string export_dot_gog(const CoxeterSystem& sys, const VisualGoG& g) {
  std::ostringstream out;
  out << "graph gog {\n";
  for (const auto& v : g.vertices) {
    out << "  \"" << v.id << "\" [label=\"" << format_subset(sys, v.label) << "\"];\n";
  }
  for (const auto& e : g.edges) {
    out << "  \"" << e.from << "\" -- \"" << e.to << "\" [label=\"" << format_subset(sys, e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string describe_path(const CoxeterSystem& sys, const VisualGoG& g) {
  if (g.vertices.empty()) return "";
  const auto ends = endpoints(g);
  std::vector<std::vector<std::size_t>> incident(g.vertices.size());
  for (std::size_t e = 0; e < ends.size(); ++e) {
    incident[ends[e].from].push_back(e);
    incident[ends[e].to].push_back(e);
  }
  std::vector<std::size_t> tips;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (incident[v].size() > 2) return "";
    if (incident[v].size() <= 1) tips.push_back(v);
  }
  std::size_t cur = tips.front();
  for (std::size_t t : tips) {
    if (g.vertices[t].label < g.vertices[cur].label) cur = t;
  }
  std::string out = format_subset(sys, g.vertices[cur].label);
  std::optional<std::size_t> came_by;
  while (true) {
    std::optional<std::size_t> next_edge;
    for (std::size_t e : incident[cur]) {
      if (e != came_by) next_edge = e;
    }
    if (!next_edge) break;
    const std::size_t nxt = ends[*next_edge].from == cur ? ends[*next_edge].to : ends[*next_edge].from;
    out += " *" + format_subset(sys, g.edges[*next_edge].label) + " " + format_subset(sys, g.vertices[nxt].label);
    came_by = next_edge;
    cur = nxt;
  }
  return out;
}

}  // namespace coxvis
