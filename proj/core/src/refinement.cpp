#include "coxvis/refinement.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "coxvis/errors.hpp"

namespace coxvis {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Word> parse_word_list(const CoxeterSystem& sys, std::string_view text, std::size_t line) {
  std::vector<Word> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (piece.empty()) throw ParseError(line, "empty word in list");
    try {
      out.push_back(parse_word(sys, piece));
    } catch (const DomainError& e) {
      throw ParseError(line, e.what());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_word_list(const CoxeterSystem& sys, const std::vector<Word>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ", ";
    out += format_word(sys, words[i]);
  }
  return out;
}

using Id = std::uint32_t;
Id raw(ElementId x) { return static_cast<Id>(x); }

// Elements of a finitely generated subgroup, by the number of generating
// words (or their inverses) needed to write them. Grown lazily.
class SubgroupBall {
 public:
  static constexpr std::size_t kCap = 100'000;

  SubgroupBall(const WordEngine& engine, const std::vector<Word>& words) : engine_(&engine) {
    std::unordered_set<Id> seen;
    for (const Word& w : words) {
      const ElementId g = engine.multiply(WordEngine::identity_id(), w);
      const ElementId gi = engine.inverse(g);
      for (ElementId h : {g, gi}) {
        if (raw(h) != 0 && seen.insert(raw(h)).second) gens_.push_back(h);
      }
    }
    dist_.emplace(0, 0);
    layers_.push_back({WordEngine::identity_id()});
  }

  bool contains(ElementId x, std::size_t r) {
    grow(r);
    const auto it = dist_.find(raw(x));
    return it != dist_.end() && it->second <= r;
  }

  /// Elements within r factors, nearest first.
  std::vector<std::pair<ElementId, std::size_t>> elements(std::size_t r) {
    grow(r);
    std::vector<std::pair<ElementId, std::size_t>> out;
    for (std::size_t d = 0; d < layers_.size() && d <= r; ++d) {
      for (ElementId x : layers_[d]) out.emplace_back(x, d);
    }
    return out;
  }

 private:
  void grow(std::size_t r) {
    while (layers_.size() <= r && !layers_.back().empty() && dist_.size() < kCap) {
      std::vector<ElementId> next;
      const std::size_t d = layers_.size();
      for (ElementId x : layers_.back()) {
        for (ElementId g : gens_) {
          const ElementId y = engine_->multiply(x, g);
          if (dist_.emplace(raw(y), d).second) next.push_back(y);
          if (dist_.size() >= kCap) break;
        }
        if (dist_.size() >= kCap) break;
      }
      layers_.push_back(std::move(next));
    }
  }

  const WordEngine* engine_;
  std::vector<ElementId> gens_;
  std::unordered_map<Id, std::size_t> dist_;
  std::vector<std::vector<ElementId>> layers_;
};

struct TreeNode {
  ElementId g;
  std::size_t lam;                    // splitting vertex index
  std::optional<std::size_t> parent;  // tree node index; none on the transversal
  std::size_t via_edge = 0;           // splitting edge joining to the parent
  ElementId edge_rep{};               // the connecting edge is edge_rep·Λ(via_edge)
  std::size_t cost = 0;
  GeneratorSubset stabilizer;
};

struct Adjacent {
  std::size_t edge;
  std::size_t other;
};

}  // namespace

AbstractSplitting parse_splitting(const CoxeterSystem& sys, std::string_view text) {
  AbstractSplitting out;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line = raw_line;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;

    const auto words_at = body.find(" words");
    if (words_at == std::string::npos) throw ParseError(line_no, "expected 'words' followed by a word list");
    std::istringstream head(body.substr(0, words_at));
    std::vector<std::string> tokens;
    for (std::string t; head >> t;) tokens.push_back(t);
    const std::string list = trim(std::string_view(body).substr(words_at + 6));
    if (list.empty()) throw ParseError(line_no, "empty word list");

    if (tokens.size() == 2 && tokens[0] == "vertex") {
      out.vertices.push_back({tokens[1], parse_word_list(sys, list, line_no)});
    } else if (tokens.size() == 4 && tokens[0] == "edge") {
      out.edges.push_back({tokens[1], tokens[2], tokens[3], parse_word_list(sys, list, line_no)});
    } else {
      throw ParseError(line_no, "expected 'vertex <id> words ...' or 'edge <id> <from> <to> words ...'");
    }
  }
  return out;
}

std::string emit_splitting(const CoxeterSystem& sys, const AbstractSplitting& split) {
  std::string out;
  for (const auto& v : split.vertices) out += "vertex " + v.id + " words " + format_word_list(sys, v.words) + "\n";
  for (const auto& e : split.edges) {
    out += "edge " + e.id + " " + e.from + " " + e.to + " words " + format_word_list(sys, e.words) + "\n";
  }
  return out;
}

AbstractSplitting splitting_from_visual(const CoxeterSystem& sys, const VisualGoG& g) {
  check_structure(sys, g);
  auto words_of = [](GeneratorSubset label) {
    std::vector<Word> words;
    for (GenIndex s : label.members()) words.push_back({s});
    if (words.empty()) words.emplace_back();
    return words;
  };
  AbstractSplitting out;
  for (const auto& v : g.vertices) out.vertices.push_back({v.id, words_of(v.label)});
  for (const auto& e : g.edges) out.edges.push_back({e.id, e.from, e.to, words_of(e.label)});
  return out;
}

void check_splitting(const AbstractSplitting& split) {
  if (split.vertices.empty()) throw DomainError("splitting has no vertices");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < split.vertices.size(); ++i) {
    if (!index.emplace(split.vertices[i].id, i).second) {
      throw DomainError("duplicate vertex id " + split.vertices[i].id);
    }
    if (split.vertices[i].words.empty()) throw DomainError("vertex " + split.vertices[i].id + " has no words");
  }
  std::set<std::string> edge_ids;
  std::vector<std::size_t> root(split.vertices.size());
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = i;
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& e : split.edges) {
    if (!edge_ids.insert(e.id).second) throw DomainError("duplicate edge id " + e.id);
    if (e.words.empty()) throw DomainError("edge " + e.id + " has no words");
    const auto a = index.find(e.from);
    const auto b = index.find(e.to);
    if (a == index.end() || b == index.end()) throw DomainError("edge " + e.id + " names an unknown vertex");
    const std::size_t ra = find(a->second);
    const std::size_t rb = find(b->second);
    if (ra == rb) throw DomainError("splitting is not a tree (edge " + e.id + " closes a cycle)");
    root[ra] = rb;
  }
  if (split.edges.size() + 1 != split.vertices.size()) throw DomainError("splitting is not connected");
}

RefinementOutcome refine_to_visual(const WordEngine& engine, const AbstractSplitting& split, std::size_t radius) {
  check_splitting(split);
  const CoxeterSystem& sys = engine.system();
  RefinementOutcome out;
  out.radius = radius;
  out.generator_certificates.assign(sys.rank(), std::nullopt);

  std::map<std::string, std::size_t> vindex;
  for (std::size_t i = 0; i < split.vertices.size(); ++i) vindex[split.vertices[i].id] = i;
  std::vector<SubgroupBall> vball;
  std::vector<SubgroupBall> eball;
  for (const auto& v : split.vertices) vball.emplace_back(engine, v.words);
  for (const auto& e : split.edges) eball.emplace_back(engine, e.words);

  std::vector<std::vector<Adjacent>> adj(split.vertices.size());
  for (std::size_t i = 0; i < split.edges.size(); ++i) {
    const std::size_t a = vindex.at(split.edges[i].from);
    const std::size_t b = vindex.at(split.edges[i].to);
    adj[a].push_back({i, b});
    adj[b].push_back({i, a});
  }

  // Edge groups must sit inside both endpoint groups.
  for (std::size_t i = 0; i < split.edges.size(); ++i) {
    for (const Word& w : split.edges[i].words) {
      const ElementId x = engine.multiply(WordEngine::identity_id(), w);
      for (const std::string& end : {split.edges[i].from, split.edges[i].to}) {
        if (!vball[vindex.at(end)].contains(x, radius)) {
          out.reason = "edge " + split.edges[i].id + " word '" + format_word(sys, w) +
                       "' not certified in vertex " + end + " within radius " + std::to_string(radius);
          return out;
        }
      }
    }
  }

  std::vector<ElementId> gens(sys.rank());
  for (GenIndex s = 0; s < sys.rank(); ++s) gens[s] = engine.multiply(WordEngine::identity_id(), s);
  auto conjugate = [&](ElementId g, GenIndex s) {
    return engine.multiply(engine.multiply(engine.inverse(g), gens[s]), g);
  };
  auto fixed_by = [&](ElementId g, SubgroupBall& ball) {
    GeneratorSubset label;
    for (GenIndex s = 0; s < sys.rank(); ++s) {
      if (ball.contains(conjugate(g, s), radius)) label.insert(s);
    }
    return label;
  };

  // Requirements: each generator, and each diagram edge, fixes a common vertex.
  std::vector<GeneratorSubset> pending;
  for (GenIndex s = 0; s < sys.rank(); ++s) pending.push_back(GeneratorSubset::singleton(s));
  for (GenIndex s = 0; s < sys.rank(); ++s) {
    for (GenIndex t = s + 1; t < sys.rank(); ++t) {
      if (sys.order(s, t) != kInfiniteOrder) pending.push_back(GeneratorSubset{s, t});
    }
  }
  std::vector<std::size_t> certificate_nodes;

  std::vector<TreeNode> nodes;
  using Entry = std::pair<std::size_t, std::size_t>;  // cost, node index
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (std::size_t v = 0; v < split.vertices.size(); ++v) {
    nodes.push_back({WordEngine::identity_id(), v, std::nullopt, 0, WordEngine::identity_id(), 0, {}});
    queue.emplace(0, v);
  }

  while (!queue.empty() && !pending.empty()) {
    const auto [cost, u] = queue.top();
    queue.pop();
    ++out.vertices_explored;
    nodes[u].stabilizer = fixed_by(nodes[u].g, vball[nodes[u].lam]);
    const auto before = pending.size();
    std::erase_if(pending, [&](GeneratorSubset need) { return need.subset_of(nodes[u].stabilizer); });
    if (pending.size() != before) certificate_nodes.push_back(u);
    for (GenIndex s : nodes[u].stabilizer.members()) {
      if (!out.generator_certificates[s]) out.generator_certificates[s] = u;
    }
    if (pending.empty()) break;

    const TreeNode here = nodes[u];
    SubgroupBall& ball = vball[here.lam];
    for (const Adjacent& a : adj[here.lam]) {
      // The identity coset of this edge is already present for transversal
      // vertices and for the edge back to the parent.
      const bool skip_identity = !here.parent || a.edge == here.via_edge;
      std::vector<ElementId> reps;
      for (const auto& [k, len] : ball.elements(radius)) {
        const std::size_t step = std::max<std::size_t>(1, len);
        if (cost + step > radius) break;
        const bool repeated = std::any_of(reps.begin(), reps.end(), [&](ElementId r) {
          return eball[a.edge].contains(engine.multiply(engine.inverse(r), k), radius);
        });
        if (repeated) continue;
        reps.push_back(k);
        if (reps.size() == 1 && skip_identity && len == 0) continue;
        const ElementId gk = engine.multiply(here.g, k);
        nodes.push_back({gk, a.other, u, a.edge, gk, cost + step, {}});
        queue.emplace(cost + step, nodes.size() - 1);
      }
    }
  }

  if (!pending.empty()) {
    out.reason = "no tree vertex within radius " + std::to_string(radius) + " certified for";
    for (GeneratorSubset need : pending) out.reason += " " + format_subset(sys, need);
    return out;
  }

  // Spanned subtree: certificate vertices, their ancestors and the transversal.
  std::vector<char> keep(nodes.size(), 0);
  for (std::size_t v = 0; v < split.vertices.size(); ++v) keep[v] = 1;
  std::vector<char> needed(nodes.size(), 0);
  for (std::size_t c : certificate_nodes) {
    needed[c] = 1;
    for (std::optional<std::size_t> x = c; x; x = nodes[*x].parent) keep[*x] = 1;
  }
  // Transversal neighbours come from the splitting's own edges.
  struct TreeEdge {
    std::size_t a, b, edge;
    ElementId rep;
  };
  std::vector<TreeEdge> tree_edges;
  for (std::size_t i = 0; i < split.edges.size(); ++i) {
    tree_edges.push_back({vindex.at(split.edges[i].from), vindex.at(split.edges[i].to), i, WordEngine::identity_id()});
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (keep[i] && nodes[i].parent) tree_edges.push_back({*nodes[i].parent, i, nodes[i].via_edge, nodes[i].edge_rep});
  }
  // Prune leaves that certify nothing.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> degree(nodes.size(), 0);
    for (const auto& e : tree_edges) {
      if (keep[e.a] && keep[e.b]) ++degree[e.a], ++degree[e.b];
    }
    std::size_t alive = std::count(keep.begin(), keep.end(), 1);
    for (std::size_t i = 0; i < nodes.size() && alive > 1; ++i) {
      if (keep[i] && !needed[i] && degree[i] <= 1) {
        keep[i] = 0;
        --alive;
        changed = true;
      }
    }
  }

  VisualGoG g;
  std::map<std::size_t, std::string> id_of;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!keep[i]) continue;
    id_of[i] = "t" + std::to_string(out.tree.size());
    out.tree.push_back({engine.element(nodes[i].g), split.vertices[nodes[i].lam].id, nodes[i].stabilizer, nodes[i].cost});
    g.vertices.push_back({id_of[i], nodes[i].stabilizer});
  }
  for (auto& cert : out.generator_certificates) {
    if (cert) cert = std::distance(id_of.begin(), id_of.find(*cert));
  }
  std::size_t edge_no = 0;
  for (const auto& e : tree_edges) {
    if (!keep[e.a] || !keep[e.b]) continue;
    g.edges.push_back({"f" + std::to_string(edge_no++), id_of[e.a], id_of[e.b], fixed_by(e.rep, eball[e.edge])});
  }

  // Labels of the collapsed-away vertices are empty, so their edges are too.
  for (bool changed = true; changed && g.vertices.size() > 1;) {
    changed = false;
    for (const auto& v : g.vertices) {
      if (!v.label.empty()) continue;
      for (const auto& e : g.edges) {
        if (e.from == v.id || e.to == v.id) {
          g = collapse_edges(g, {e.id});
          changed = true;
          break;
        }
      }
      break;
    }
  }

  try {
    check_structure(sys, g);
  } catch (const DomainError& e) {
    out.reason = std::string("assembled tree is malformed: ") + e.what();
    return out;
  }
  g = reduce(std::move(g));
  const ValidationReport report = validate_visual(sys, g);
  if (!report.valid) {
    out.reason = "assembled tree is not visual: " + report.describe(sys);
    return out;
  }
  out.decomposition = canonicalize(g);
  out.status = RefinementStatus::Refined;
  return out;
}

}  // namespace coxvis
