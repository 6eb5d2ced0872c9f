#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxvis/coxeter_system.hpp"

namespace coxvis {

using GroupOrder = boost::multiprecision::cpp_int;

enum class FiniteFamily { A, B, D, E6, E7, E8, F4, H3, H4, I2 };

/// An irreducible finite Coxeter type. B and C coincide as groups; only B is used.
struct FiniteTypeLabel {
  FiniteFamily family = FiniteFamily::A;
  std::size_t rank = 1;
  EdgeOrder dihedral_order = 0;  // meaningful for I2 only

  GroupOrder order() const;
  /// "A3", "B4", "E8", "I2(5)".
  std::string name() const;

  friend bool operator==(const FiniteTypeLabel&, const FiniteTypeLabel&) = default;
};

struct FinitenessVerdict {
  bool finite = true;
  std::vector<FiniteTypeLabel> factors;  // one per Coxeter-graph component; empty if infinite
  GroupOrder order = 1;                  // product of factor orders; unused when infinite

  /// "finite order=12 factors=A1 x I2(3)" or "infinite".
  std::string describe() const;
};

/// Finite type of the irreducible special subgroup on A, or nullopt when it is
/// infinite. Throws DomainError if A is empty or not Coxeter-graph connected.
std::optional<FiniteTypeLabel> classify_irreducible(const CoxeterSystem& sys, GeneratorSubset irreducible);

/// Classifies every Coxeter-graph component of A. ⟨∅⟩ is finite of order 1.
FinitenessVerdict is_finite(const CoxeterSystem& sys, GeneratorSubset subset);

}  // namespace coxvis
