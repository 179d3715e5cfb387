#pragma once

#include <span>
#include <utility>
#include <vector>

#include "investornet/spantree.hpp"

// Slow reference implementations used by the self-test and the test suites.
// Nothing here shares code with the production path it checks.
namespace investornet::oracle {

// Mean first, then centered moments, in long double.
double two_pass_pearson(std::span<const double> x, std::span<const double> y);

struct ReferenceTree {
  long double total = 0.0L;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted, a < b
};

// Enumerates all n^(n-2) labeled trees on n <= 9 nodes (Prüfer sequences)
// and returns one with the extreme total weight. `weights` is n x n row-major.
ReferenceTree brute_force_tree(std::size_t n, std::span<const double> weights, TreeKind kind);

}  // namespace investornet::oracle
