#include "coxvis/word_engine.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_set>

#include "coxvis/errors.hpp"

namespace coxvis {

Word parse_word(const CoxeterSystem& sys, std::string_view text) {
  Word out;
  std::vector<std::string> tokens;
  std::string token;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) tokens.push_back(std::move(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) tokens.push_back(std::move(token));
  if (tokens.size() == 1 && tokens[0] == "e" && !sys.find("e")) return out;
  for (const auto& t : tokens) {
    auto g = sys.find(t);
    if (!g) throw DomainError("unknown generator '" + t + "' in word");
    out.push_back(*g);
  }
  return out;
}

std::string format_word(const CoxeterSystem& sys, std::span<const Letter> word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i != 0) out += ' ';
    out += sys.name(word[i]);
  }
  return out;
}

namespace {

constexpr std::uint32_t kNone = 0xffffffffU;

}  // namespace

struct WordEngine::State {
  CoxeterSystem sys;
  EngineLimits limits;
  std::size_t n;

  mutable std::shared_mutex mutex;
  // Trie of ShortLex normal forms. child[] holds normal-form extensions,
  // prod[] every product computed so far (kNone when unknown).
  std::vector<std::uint32_t> parent;
  std::vector<Letter> last;
  std::vector<std::uint32_t> depth;
  std::vector<std::uint32_t> child;
  std::vector<std::uint32_t> prod;

  State(CoxeterSystem s, EngineLimits l) : sys(std::move(s)), limits(l), n(sys.rank()) {
    parent.push_back(kNone);
    last.push_back(0);
    depth.push_back(0);
    child.assign(n, kNone);
    prod.assign(n, kNone);
  }

  // Caller holds the mutex (shared or unique).
  Word word_of(std::uint32_t id) const {
    Word w(depth[id]);
    for (std::size_t k = w.size(); k > 0; --k) {
      w[k - 1] = last[id];
      id = parent[id];
    }
    return w;
  }

  // Caller holds the mutex exclusively. `nf` must be a normal form.
  std::uint32_t insert(const Word& nf) {
    std::uint32_t node = 0;
    for (Letter c : nf) {
      std::uint32_t next = child[node * n + c];
      if (next == kNone) {
        next = static_cast<std::uint32_t>(parent.size());
        parent.push_back(node);
        last.push_back(c);
        depth.push_back(depth[node] + 1);
        child.resize(child.size() + n, kNone);
        prod.resize(prod.size() + n, kNone);
        child[node * n + c] = next;
        prod[node * n + c] = next;
        prod[next * n + c] = node;
      }
      node = next;
    }
    return node;
  }

  bool commute(Letter a, Letter b) const { return a != b && sys.order(a, b) == 2; }

  // Words equal up to swapping adjacent commuting letters form a commutation
  // class; the search below visits classes, not words. Positions of a word are
  // ordered by the heap order: p before q when p < q and a chain of
  // non-commuting letters leads from p to q.
  struct Heap {
    std::vector<std::vector<std::uint32_t>> direct;  // nearest non-commuting predecessors
    std::vector<std::vector<std::uint64_t>> below;   // transitive, as bitsets
    bool has(std::uint32_t q, std::uint32_t p) const { return (below[q][p / 64] >> (p % 64)) & 1U; }
  };

  Heap heap_of(const std::string& x) const {
    const std::size_t len = x.size();
    const std::size_t blocks = (len + 63) / 64;
    Heap h{std::vector<std::vector<std::uint32_t>>(len), std::vector<std::vector<std::uint64_t>>(len)};
    std::vector<std::uint32_t> latest(n, kNone);
    for (std::size_t q = 0; q < len; ++q) {
      const auto c = static_cast<Letter>(x[q]);
      auto& bits = h.below[q];
      bits.assign(blocks, 0);
      for (Letter d = 0; d < n; ++d) {
        const std::uint32_t p = latest[d];
        if (p == kNone || commute(c, d)) continue;
        h.direct[q].push_back(p);
        bits[p / 64] |= std::uint64_t{1} << (p % 64);
        for (std::size_t b = 0; b < blocks; ++b) bits[b] |= h.below[p][b];
      }
      latest[c] = static_cast<std::uint32_t>(q);
    }
    return h;
  }

  // Lexicographically least word in the commutation class of x.
  std::string lex_least(const std::string& x) const {
    const Heap h = heap_of(x);
    std::vector<std::uint32_t> waiting(x.size());
    std::vector<std::vector<std::uint32_t>> after(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
      waiting[q] = static_cast<std::uint32_t>(h.direct[q].size());
      for (std::uint32_t p : h.direct[q]) after[p].push_back(static_cast<std::uint32_t>(q));
    }
    std::vector<std::uint32_t> ready;
    for (std::size_t q = 0; q < x.size(); ++q)
      if (waiting[q] == 0) ready.push_back(static_cast<std::uint32_t>(q));
    std::string out;
    while (!ready.empty()) {
      // Ready positions carry distinct letters, so the minimum is unique.
      auto pick = std::min_element(ready.begin(), ready.end(), [&](std::uint32_t a, std::uint32_t b) {
        return static_cast<Letter>(x[a]) < static_cast<Letter>(x[b]);
      });
      const std::uint32_t p = *pick;
      ready.erase(pick);
      out.push_back(x[p]);
      for (std::uint32_t q : after[p])
        if (--waiting[q] == 0) ready.push_back(q);
    }
    return out;
  }

  // Two equal letters that some word of the class puts side by side, or nullopt.
  static std::optional<std::pair<std::uint32_t, std::uint32_t>> cancelling_pair(const std::string& x, const Heap& h) {
    for (std::uint32_t q = 0; q < x.size(); ++q) {
      for (std::uint32_t i : h.direct[q]) {
        if (x[i] != x[q]) continue;
        // Adjacent unless something lies strictly between i and q.
        const bool blocked = std::any_of(h.direct[q].begin(), h.direct[q].end(),
                                         [&](std::uint32_t p) { return p != i && h.has(p, i); });
        if (!blocked) return std::pair{i, q};
      }
    }
    return std::nullopt;
  }

  // Classes one braid move (m >= 3) away: an alternating chain s t s ... of
  // length m(s,t) that is convex in the heap can be made a factor and reversed.
  template <typename F>
  void braid_neighbours(const std::string& x, const Heap& h, F&& visit) const {
    const std::size_t len = x.size();
    for (std::uint32_t first = 0; first < len; ++first) {
      const auto s = static_cast<Letter>(x[first]);
      for (Letter t = 0; t < n; ++t) {
        const EdgeOrder m = sys.order(s, t);
        if (t == s || m == 2 || m == kInfiniteOrder || m > len - first) continue;
        std::vector<std::uint32_t> chain{first};
        for (std::uint32_t k = first + 1; k < len && chain.size() < m; ++k) {
          const auto c = static_cast<Letter>(x[k]);
          if (c != s && c != t) continue;
          if (c != (chain.size() % 2 == 0 ? s : t)) break;
          chain.push_back(k);
        }
        if (chain.size() != m) continue;
        const std::uint32_t last_pos = chain.back();
        bool convex = true;
        std::size_t next_in_chain = 1;
        for (std::uint32_t k = first + 1; k < last_pos && convex; ++k) {
          if (k == chain[next_in_chain]) {
            ++next_in_chain;
            continue;
          }
          convex = !(h.has(k, first) && h.has(last_pos, k));
        }
        if (!convex) continue;
        // Everything below the chain, the reversed alternation, the rest.
        std::string y;
        y.reserve(len);
        std::vector<bool> in_chain(len, false);
        for (std::uint32_t c : chain) in_chain[c] = true;
        for (std::uint32_t k = 0; k < len; ++k)
          if (!in_chain[k] && k < last_pos && h.has(last_pos, k)) y.push_back(x[k]);
        for (std::size_t k = 0; k < m; ++k) y.push_back(static_cast<char>(k % 2 == 0 ? t : s));
        for (std::uint32_t k = 0; k < len; ++k)
          if (!in_chain[k] && !(k < last_pos && h.has(last_pos, k))) y.push_back(x[k]);
        visit(std::move(y));
      }
    }
  }

  // Explores the braid class of w, one commutation class at a time; restarts
  // on the shorter word whenever two equal letters can be made adjacent.
  // Returns the ShortLex-least reduced word.
  Word reduce(Word w) const {
    while (true) {
      const std::string start = lex_least(std::string(w.begin(), w.end()));
      std::string best = start;
      std::unordered_set<std::string> seen{start};
      std::vector<std::string> stack{start};
      std::optional<std::string> shorter;
      while (!stack.empty() && !shorter) {
        const std::string x = std::move(stack.back());
        stack.pop_back();
        const Heap h = heap_of(x);
        if (const auto pair = cancelling_pair(x, h)) {
          shorter = x;
          shorter->erase(pair->second, 1);
          shorter->erase(pair->first, 1);
          break;
        }
        braid_neighbours(x, h, [&](std::string y) {
          std::string rep = lex_least(y);
          if (!seen.insert(rep).second) return;
          if (seen.size() > limits.braid_closure_cap) {
            throw DomainError("braid-move closure exceeded " + std::to_string(limits.braid_closure_cap) +
                              " commutation classes");
          }
          if (rep < best) best = rep;
          stack.push_back(std::move(rep));
        });
      }
      if (shorter) {
        w.assign(shorter->begin(), shorter->end());
        continue;
      }
      return Word(best.begin(), best.end());
    }
  }
};

WordEngine::WordEngine(CoxeterSystem sys, EngineLimits limits)
    : state_(std::make_unique<State>(std::move(sys), limits)) {}
WordEngine::~WordEngine() = default;
WordEngine::WordEngine(WordEngine&&) noexcept = default;
WordEngine& WordEngine::operator=(WordEngine&&) noexcept = default;

const CoxeterSystem& WordEngine::system() const { return state_->sys; }

ElementId WordEngine::multiply(ElementId x, Letter s) const {
  State& st = *state_;
  if (s >= st.n) throw DomainError("letter outside the generator set");
  const auto id = static_cast<std::uint32_t>(x);
  Word u;
  {
    std::shared_lock lock(st.mutex);
    const std::uint32_t known = st.prod[id * st.n + s];
    if (known != kNone) return ElementId{known};
    u = st.word_of(id);
  }
  // A trailing s cancels; that case is always cached at node creation.
  u.push_back(s);
  const Word nf = st.reduce(std::move(u));
  std::unique_lock lock(st.mutex);
  const std::uint32_t result = st.insert(nf);
  st.prod[id * st.n + s] = result;
  st.prod[result * st.n + s] = id;
  return ElementId{result};
}

ElementId WordEngine::multiply(ElementId x, std::span<const Letter> word) const {
  for (Letter s : word) x = multiply(x, s);
  return x;
}

ElementId WordEngine::multiply(ElementId x, ElementId y) const {
  return multiply(x, element(y).word());
}

ElementId WordEngine::left_multiply(Letter s, ElementId x) const {
  return multiply(multiply(identity_id(), s), element(x).word());
}

ElementId WordEngine::inverse(ElementId x) const {
  Word w = element(x).word();
  std::reverse(w.begin(), w.end());
  return multiply(identity_id(), w);
}

ElementId WordEngine::id_of(const GroupElement& g) const { return multiply(identity_id(), g.word()); }

GroupElement WordEngine::element(ElementId x) const {
  std::shared_lock lock(state_->mutex);
  return GroupElement(state_->word_of(static_cast<std::uint32_t>(x)));
}

std::size_t WordEngine::length(ElementId x) const {
  std::shared_lock lock(state_->mutex);
  return state_->depth[static_cast<std::uint32_t>(x)];
}

GroupElement WordEngine::normal_form(std::span<const Letter> word) const {
  return element(multiply(identity_id(), word));
}

GroupElement WordEngine::multiply(const GroupElement& a, const GroupElement& b) const {
  return element(multiply(id_of(a), b.word()));
}

GroupElement WordEngine::inverse(const GroupElement& g) const {
  Word w = g.word();
  std::reverse(w.begin(), w.end());
  return normal_form(w);
}

bool WordEngine::words_equal(std::span<const Letter> a, std::span<const Letter> b) const {
  return multiply(identity_id(), a) == multiply(identity_id(), b);
}

bool WordEngine::is_geodesic(std::span<const Letter> word) const {
  return length(multiply(identity_id(), word)) == word.size();
}

GeneratorSubset WordEngine::support(std::span<const Letter> word) const {
  GeneratorSubset out;
  const GroupElement g = normal_form(word);
  for (Letter s : g.word()) out.insert(s);
  return out;
}

bool WordEngine::is_right_descent(const GroupElement& g, Letter s) const {
  return length(multiply(id_of(g), s)) < g.length();
}

bool WordEngine::is_left_descent(const GroupElement& g, Letter s) const {
  return length(left_multiply(s, id_of(g))) < g.length();
}

CosetDescriptor WordEngine::coset_min_rep(const GroupElement& y, GeneratorSubset subgroup) const {
  if (!subgroup.subset_of(system().all())) throw DomainError("subset member outside the generator set");
  ElementId cur = id_of(y);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Letter s : subgroup.members()) {
      const ElementId next = multiply(cur, s);
      if (length(next) < length(cur)) {
        cur = next;
        changed = true;
        break;
      }
    }
  }
  return CosetDescriptor{element(cur), subgroup};
}

DoubleCosetFactorization WordEngine::factor_double_coset(GeneratorSubset left, const GroupElement& w,
                                                         GeneratorSubset right) const {
  if (!left.subset_of(system().all()) || !right.subset_of(system().all())) {
    throw DomainError("subset member outside the generator set");
  }
  Word left_letters;   // w = left_letters · cur · reverse(right_letters)
  Word right_letters;
  ElementId cur = id_of(w);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Letter s : left.members()) {
      const ElementId next = left_multiply(s, cur);
      if (length(next) < length(cur)) {
        cur = next;
        left_letters.push_back(s);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (Letter t : right.members()) {
      const ElementId next = multiply(cur, t);
      if (length(next) < length(cur)) {
        cur = next;
        right_letters.push_back(t);
        changed = true;
        break;
      }
    }
  }
  std::reverse(right_letters.begin(), right_letters.end());
  return DoubleCosetFactorization{normal_form(left_letters), element(cur), normal_form(right_letters)};
}

GroupElement WordEngine::double_coset_min_rep(GeneratorSubset left, const GroupElement& w,
                                              GeneratorSubset right) const {
  return factor_double_coset(left, w, right).middle;
}

IntersectionResult WordEngine::intersect_special_conjugates(const ConjugateSpecial& p,
                                                            const ConjugateSpecial& q) const {
  const GroupElement between = multiply(inverse(p.conjugator), q.conjugator);
  const DoubleCosetFactorization f = factor_double_coset(p.core, between, q.core);
  const ElementId d = id_of(f.middle);
  const ElementId d_inv = inverse(d);
  GeneratorSubset core;
  for (Letter i : p.core.members()) {
    // i ∈ dJd⁻¹ iff d⁻¹·i·d is a single letter of J.
    const ElementId conj = multiply(multiply(d_inv, i), d);
    if (length(conj) == 1) {
      const Letter j = element(conj).word().front();
      if (q.core.contains(j)) core.insert(i);
    }
  }
  return IntersectionResult{multiply(p.conjugator, f.left), core};
}

CayleyBall WordEngine::cayley_ball(GeneratorSubset subgroup, BallOptions options) const {
  if (!subgroup.subset_of(system().all())) throw DomainError("subset member outside the generator set");
  CayleyBall ball;
  std::unordered_set<std::uint32_t> seen{0};
  std::vector<ElementId> frontier{identity_id()};
  std::vector<ElementId> all{identity_id()};
  const auto letters = subgroup.members();
  std::size_t r = 0;
  while (!frontier.empty()) {
    const bool at_limit = options.radius && r == *options.radius;
    std::vector<ElementId> next;
    for (ElementId x : frontier) {
      for (Letter s : letters) {
        const ElementId y = multiply(x, s);
        if (seen.contains(static_cast<std::uint32_t>(y))) continue;
        if (at_limit) {
          // Something lies beyond the radius: incomplete.
          ball.complete = false;
          for (ElementId e : all) ball.elements.push_back(element(e));
          return ball;
        }
        seen.insert(static_cast<std::uint32_t>(y));
        next.push_back(y);
        all.push_back(y);
        if (all.size() > options.cap) {
          throw DomainError("Cayley ball exceeded " + std::to_string(options.cap) + " elements");
        }
      }
    }
    if (at_limit) break;
    frontier = std::move(next);
    ++r;
  }
  ball.complete = true;
  ball.elements.reserve(all.size());
  for (ElementId e : all) ball.elements.push_back(element(e));
  return ball;
}

}  // namespace coxvis
