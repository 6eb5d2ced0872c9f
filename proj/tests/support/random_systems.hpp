#pragma once

#include <random>
#include <string>
#include <vector>

#include "coxvis/coxeter_system.hpp"
#include "coxvis/graph_of_groups.hpp"

namespace fixtures {

std::string data_path(const std::string& name);
std::string read_data(const std::string& name);
coxvis::CoxeterSystem load_system(const std::string& name);

/// n generators g0..g{n-1}; each pair independently gets an order from `labels`
/// (kInfiniteOrder means no edge).
coxvis::CoxeterSystem random_system(std::mt19937_64& rng, std::size_t n, const std::vector<coxvis::EdgeOrder>& labels);

/// A random visual decomposition: repeated visual splittings of random vertex
/// groups over random separating subsets, then random edge collapses.
coxvis::VisualGoG random_decomposition(std::mt19937_64& rng, const coxvis::CoxeterSystem& sys);

/// Brute-force subtree criterion, written without the library's validator.
bool subtree_criterion(const coxvis::CoxeterSystem& sys, const coxvis::VisualGoG& g);

/// True iff some induced subgraph on ≥ 4 vertices is a cycle (brute force).
bool has_induced_long_cycle(const coxvis::CoxeterSystem& sys);

}  // namespace fixtures
