#include "investornet/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "investornet/corrnet.hpp"
#include "investornet/oracle.hpp"
#include "investornet/spantree.hpp"
#include "investornet/synth.hpp"
#include "investornet/windows.hpp"

namespace investornet {

namespace {

std::vector<std::string> node_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(fmt::format("n{:02d}", i));
  return names;
}

// Symmetric n x n weights, all off-diagonal values distinct multiples of
// 1/1024 in [-1, 1]; sums of up to 1024 such values are exact in double.
std::vector<double> distinct_dyadic_weights(std::size_t n, PortableRng& rng) {
  std::set<int> used;
  std::vector<double> w(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int m = 0;
      do {
        m = static_cast<int>(rng.next() % 2049) - 1024;
      } while (!used.insert(m).second);
      w[i * n + j] = w[j * n + i] = m / 1024.0;
    }
  }
  return w;
}

std::vector<std::pair<std::size_t, std::size_t>> edge_set(const SpanningTree& tree) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : tree.edges) out.emplace_back(e.a, e.b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> random_series(std::size_t length, PortableRng& rng) {
  std::vector<double> x(length, 0.0);
  switch (rng.next() % 3) {
    case 0:
      for (auto& v : x) v = (2.0 * rng.uniform() - 1.0) * 1e6;
      break;
    case 1:
      for (auto& v : x) {
        if (rng.uniform() < 0.1) v = std::round((2.0 * rng.uniform() - 1.0) * 1e6);
      }
      break;
    default: {
      std::vector<std::int64_t> raw(length, 0);
      for (auto& v : raw) {
        if (rng.uniform() < 0.25) v = std::llround((2.0 * rng.uniform() - 1.0) * 1e6);
      }
      x = smooth(raw, 5);
    }
  }
  return x;
}

bool constant(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

}  // namespace

OracleCheck check_spanning_trees(std::size_t cases, std::uint64_t seed, bool inject_fault) {
  OracleCheck check{"spanning_tree_bruteforce", cases, 0, {}};
  PortableRng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 6);
    const auto net = make_network(node_names(n), distinct_dyadic_weights(n, rng));
    auto [min_tree, max_tree] = spanning_trees(net);
    if (inject_fault) std::swap(min_tree, max_tree);
    bool ok = true;
    for (const auto* tree : {&min_tree, &max_tree}) {
      const auto kind = tree == &min_tree ? TreeKind::Min : TreeKind::Max;
      const auto ref = oracle::brute_force_tree(n, net.weights, kind);
      long double total = 0.0L;
      for (const auto& e : tree->edges) total += e.weight;
      if (tree->edges.size() != n - 1 || total != ref.total || edge_set(*tree) != ref.edges) {
        ok = false;
      }
    }
    if (!ok && check.failures++ == 0) {
      check.first_failure = fmt::format("case {} (N={}): tree differs from enumeration", c, n);
    }
  }
  return check;
}

OracleCheck check_pearson(std::size_t cases, std::uint64_t seed, bool inject_fault,
                          double tolerance) {
  OracleCheck check{"pearson_two_pass", cases, 0, {}};
  PortableRng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    std::vector<double> x, y;
    do {
      x = random_series(126, rng);
    } while (constant(x));
    do {
      y = random_series(126, rng);
    } while (constant(y));
    double r = pearson(x, y);
    if (inject_fault) r += 1e-6;
    const double ref = oracle::two_pass_pearson(x, y);
    if (!(std::abs(r - ref) <= tolerance) && check.failures++ == 0) {
      check.first_failure = fmt::format("case {}: pearson {} vs reference {}", c, r, ref);
    }
  }
  return check;
}

OracleCheck check_duality(std::size_t cases, std::uint64_t seed, bool inject_fault) {
  OracleCheck check{"distance_duality", cases, 0, {}};
  PortableRng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 30);
    const auto net = make_network(node_names(n), distinct_dyadic_weights(n, rng));
    auto max_edges = edge_set(max_spanning_tree(net));
    const auto dist_edges = edge_set(min_spanning_tree(distance_transform(net)));
    if (inject_fault) max_edges = edge_set(min_spanning_tree(net));
    if (max_edges != dist_edges && check.failures++ == 0) {
      check.first_failure = fmt::format("case {} (N={}): edge sets differ", c, n);
    }
  }
  return check;
}

bool SelftestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const OracleCheck& c) { return c.failures == 0; });
}

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  report.checks.push_back(
      check_spanning_trees(options.iterations, options.seed, options.inject_fault));
  report.checks.push_back(check_pearson(options.iterations, options.seed + 1, options.inject_fault));
  report.checks.push_back(check_duality(options.iterations, options.seed + 2, options.inject_fault));
  return report;
}

}  // namespace investornet
