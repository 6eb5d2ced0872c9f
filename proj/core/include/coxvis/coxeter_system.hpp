#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coxvis/subset.hpp"

namespace coxvis {

/// Order m(s,t) of a product of two distinct generators.
using EdgeOrder = std::uint32_t;
inline constexpr EdgeOrder kInfiniteOrder = std::numeric_limits<EdgeOrder>::max();

struct Generator {
  std::string name;
  GenIndex index = 0;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Symmetric Coxeter matrix over unordered pairs. The diagonal is implicit;
/// pairs never set are infinite.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  explicit CoxeterMatrix(std::size_t rank);

  std::size_t rank() const { return rank_; }
  EdgeOrder get(GenIndex s, GenIndex t) const;
  /// Requires s != t and order >= 2 (or kInfiniteOrder).
  void set(GenIndex s, GenIndex t, EdgeOrder order);

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<EdgeOrder> orders_;  // rank_ x rank_, diagonal unused
};

/// A finitely generated Coxeter system (W,S): the generator list plus m(s,t).
class CoxeterSystem {
 public:
  CoxeterSystem() = default;
  /// Throws DomainError on bad names, duplicates, or a rank mismatch.
  CoxeterSystem(std::vector<std::string> names, CoxeterMatrix matrix);

  std::size_t rank() const { return generators_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::string& name(GenIndex g) const { return generators_[g].name; }
  std::optional<GenIndex> find(std::string_view name) const;
  const CoxeterMatrix& matrix() const { return matrix_; }

  EdgeOrder order(GenIndex s, GenIndex t) const {
    return s == t ? 1 : matrix_.get(s, t);
  }
  GeneratorSubset all() const { return GeneratorSubset::full(rank()); }

  /// Neighbours of g in the presentation diagram (finite m(g,t), t != g).
  GeneratorSubset diagram_neighbors(GenIndex g) const { return diagram_adj_[g]; }
  /// Neighbours of g in the Coxeter graph (m(g,t) != 2, including infinity).
  GeneratorSubset coxeter_neighbors(GenIndex g) const { return coxeter_adj_[g]; }

  /// Subset named by a whitespace- or comma-separated list of generator names.
  GeneratorSubset subset(std::string_view names) const;

  friend bool operator==(const CoxeterSystem& a, const CoxeterSystem& b) {
    return a.generators_ == b.generators_ && a.matrix_ == b.matrix_;
  }

 private:
  std::vector<Generator> generators_;
  CoxeterMatrix matrix_;
  std::vector<GeneratorSubset> diagram_adj_;
  std::vector<GeneratorSubset> coxeter_adj_;
};

bool is_valid_generator_name(std::string_view name);

/// Parses the `.cox` format. Throws ParseError (with line numbers).
CoxeterSystem parse_system(std::string_view text);

/// Canonical `.cox` text: the `gens` line, then one `m` line per finite pair
/// in declared order.
std::string emit_system(const CoxeterSystem& sys);

/// The subsystem on `members`, keeping ambient order. Throws DomainError if a
/// member is out of range.
CoxeterSystem induced_subsystem(const CoxeterSystem& sys, GeneratorSubset members);

/// "{s1,s2}" style rendering; the empty set renders as "{}".
std::string format_subset(const CoxeterSystem& sys, GeneratorSubset set);

}  // namespace coxvis
