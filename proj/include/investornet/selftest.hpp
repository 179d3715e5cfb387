#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace investornet {

struct OracleCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

// Kruskal min/max trees vs. brute-force enumeration on random complete graphs
// with N uniform in 2..7 and distinct dyadic weights (exact totals).
OracleCheck check_spanning_trees(std::size_t cases, std::uint64_t seed, bool inject_fault = false);

// pearson() vs. the long-double two-pass reference on length-126 pairs with
// magnitudes up to 1e6, dense, sparse zero-heavy and smoothed-sparse.
OracleCheck check_pearson(std::size_t cases, std::uint64_t seed, bool inject_fault = false,
                          double tolerance = 1e-10);

// Max-tree edges under rho equal min-tree edges under sqrt(2(1 - rho)).
OracleCheck check_duality(std::size_t cases, std::uint64_t seed, bool inject_fault = false);

struct SelftestOptions {
  std::size_t iterations = 500;  // cases per check
  std::uint64_t seed = 1;
  bool inject_fault = false;  // corrupt implementation outputs; every check must then fail
};

struct SelftestReport {
  std::vector<OracleCheck> checks;
  bool passed() const;
};

SelftestReport run_selftest(const SelftestOptions& options);

}  // namespace investornet
