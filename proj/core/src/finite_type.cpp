#include "coxvis/finite_type.hpp"

#include <algorithm>
#include <array>

#include "coxvis/diagram.hpp"
#include "coxvis/errors.hpp"

namespace coxvis {

namespace {

GroupOrder factorial(std::size_t n) {
  GroupOrder out = 1;
  for (std::size_t k = 2; k <= n; ++k) out *= k;
  return out;
}

// Walks from `from` away from `prev` along a path of degree-<=2 vertices and
// returns the number of vertices seen (excluding `prev`).
std::size_t arm_length(const CoxeterSystem& sys, GeneratorSubset set, GenIndex prev, GenIndex from) {
  std::size_t len = 1;
  GenIndex cur = from;
  while (true) {
    const GeneratorSubset next = (sys.coxeter_neighbors(cur) & set) - GeneratorSubset::singleton(prev);
    if (next.empty()) return len;
    prev = cur;
    cur = next.first();
    ++len;
  }
}

}  // namespace

GroupOrder FiniteTypeLabel::order() const {
  switch (family) {
    case FiniteFamily::A: return factorial(rank + 1);
    case FiniteFamily::B: return (GroupOrder(1) << rank) * factorial(rank);
    case FiniteFamily::D: return (GroupOrder(1) << (rank - 1)) * factorial(rank);
    case FiniteFamily::E6: return 51840;
    case FiniteFamily::E7: return 2903040;
    case FiniteFamily::E8: return 696729600;
    case FiniteFamily::F4: return 1152;
    case FiniteFamily::H3: return 120;
    case FiniteFamily::H4: return 14400;
    case FiniteFamily::I2: return GroupOrder(2) * dihedral_order;
  }
  return 0;
}

std::string FiniteTypeLabel::name() const {
  switch (family) {
    case FiniteFamily::A: return "A" + std::to_string(rank);
    case FiniteFamily::B: return "B" + std::to_string(rank);
    case FiniteFamily::D: return "D" + std::to_string(rank);
    case FiniteFamily::E6: return "E6";
    case FiniteFamily::E7: return "E7";
    case FiniteFamily::E8: return "E8";
    case FiniteFamily::F4: return "F4";
    case FiniteFamily::H3: return "H3";
    case FiniteFamily::H4: return "H4";
    case FiniteFamily::I2: return "I2(" + std::to_string(dihedral_order) + ")";
  }
  return "?";
}

std::string FinitenessVerdict::describe() const {
  if (!finite) return "infinite";
  std::string out = "finite order=" + order.str() + " factors=";
  if (factors.empty()) return out + "trivial";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i != 0) out += " x ";
    out += factors[i].name();
  }
  return out;
}

std::optional<FiniteTypeLabel> classify_irreducible(const CoxeterSystem& sys, GeneratorSubset set) {
  if (set.empty()) throw DomainError("cannot classify the empty subset");
  if (coxeter_graph_components(sys, set).size() != 1) {
    throw DomainError("subset " + format_subset(sys, set) + " is not irreducible");
  }
  const std::size_t n = set.size();
  const auto members = set.members();
  if (n == 1) return FiniteTypeLabel{FiniteFamily::A, 1, 0};
  if (n == 2) {
    const EdgeOrder m = sys.order(members[0], members[1]);
    if (m == kInfiniteOrder) return std::nullopt;
    return FiniteTypeLabel{FiniteFamily::I2, 2, m};
  }

  // Rank >= 3: the Coxeter graph must be a tree with labels in {3,4,5}.
  std::size_t edges = 0;
  std::size_t heavy = 0;  // labels > 3
  EdgeOrder heavy_label = 0;
  std::optional<GenIndex> branch;
  for (GenIndex s : members) {
    const GeneratorSubset nb = sys.coxeter_neighbors(s) & set;
    const std::size_t deg = nb.size();
    if (deg > 3) return std::nullopt;
    if (deg == 3) {
      if (branch) return std::nullopt;
      branch = s;
    }
    for (GenIndex t : nb.members()) {
      if (t < s) continue;
      const EdgeOrder m = sys.order(s, t);
      if (m == kInfiniteOrder || m > 5) return std::nullopt;
      ++edges;
      if (m > 3) {
        ++heavy;
        heavy_label = m;
      }
    }
  }
  if (edges != n - 1) return std::nullopt;

  if (branch) {
    if (heavy != 0) return std::nullopt;
    std::array<std::size_t, 3> arms{};
    std::size_t i = 0;
    for (GenIndex t : (sys.coxeter_neighbors(*branch) & set).members()) {
      arms[i++] = arm_length(sys, set, *branch, t);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return FiniteTypeLabel{FiniteFamily::D, n, 0};
    if (arms[0] == 1 && arms[1] == 2) {
      if (arms[2] == 2) return FiniteTypeLabel{FiniteFamily::E6, 6, 0};
      if (arms[2] == 3) return FiniteTypeLabel{FiniteFamily::E7, 7, 0};
      if (arms[2] == 4) return FiniteTypeLabel{FiniteFamily::E8, 8, 0};
    }
    return std::nullopt;
  }

  // A path: order its vertices from one end and read off the labels.
  GenIndex end = members[0];
  for (GenIndex s : members) {
    if ((sys.coxeter_neighbors(s) & set).size() == 1) {
      end = s;
      break;
    }
  }
  std::vector<EdgeOrder> labels;
  GenIndex prev = end;
  GenIndex cur = end;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    GeneratorSubset next = (sys.coxeter_neighbors(cur) & set);
    if (k > 0) next.erase(prev);
    const GenIndex nxt = next.first();
    labels.push_back(sys.order(cur, nxt));
    prev = cur;
    cur = nxt;
  }
  if (heavy == 0) return FiniteTypeLabel{FiniteFamily::A, n, 0};
  if (heavy > 1) return std::nullopt;
  const std::size_t pos = static_cast<std::size_t>(
      std::find_if(labels.begin(), labels.end(), [](EdgeOrder m) { return m > 3; }) - labels.begin());
  const bool at_end = pos == 0 || pos + 1 == labels.size();
  if (heavy_label == 4) {
    if (at_end) return FiniteTypeLabel{FiniteFamily::B, n, 0};
    if (n == 4) return FiniteTypeLabel{FiniteFamily::F4, 4, 0};
    return std::nullopt;
  }
  // heavy_label == 5
  if (!at_end) return std::nullopt;
  if (n == 3) return FiniteTypeLabel{FiniteFamily::H3, 3, 0};
  if (n == 4) return FiniteTypeLabel{FiniteFamily::H4, 4, 0};
  return std::nullopt;
}

FinitenessVerdict is_finite(const CoxeterSystem& sys, GeneratorSubset subset) {
  if (!subset.subset_of(sys.all())) throw DomainError("subset member outside the generator set");
  FinitenessVerdict verdict;
  for (GeneratorSubset comp : coxeter_graph_components(sys, subset)) {
    auto label = classify_irreducible(sys, comp);
    if (!label) return FinitenessVerdict{false, {}, 0};
    verdict.order *= label->order();
    verdict.factors.push_back(*label);
  }
  return verdict;
}

}  // namespace coxvis
