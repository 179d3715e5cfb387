#include "investornet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace investornet::oracle {

double two_pass_pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<long double>(n);
  my /= static_cast<long double>(n);
  long double sxy = 0.0L, sxx = 0.0L, syy = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    const long double dx = x[k] - mx;
    const long double dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

namespace {

// Decodes a Prüfer sequence into the edge list of its labeled tree.
std::vector<std::pair<std::size_t, std::size_t>> decode_pruefer(
    const std::vector<std::size_t>& seq, std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (auto v : seq) ++degree[v];
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto v : seq) {
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
      if (degree[leaf] == 1) {
        edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
        --degree[leaf];
        --degree[v];
        break;
      }
    }
  }
  std::size_t u = n, w = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] == 1) (u == n ? u : w) = i;
  }
  edges.emplace_back(std::min(u, w), std::max(u, w));
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

ReferenceTree brute_force_tree(std::size_t n, std::span<const double> weights, TreeKind kind) {
  if (n < 2 || n > 9) throw std::invalid_argument("brute_force_tree: n must be in [2, 9]");
  ReferenceTree best;
  bool have = false;
  std::vector<std::size_t> seq(n - 2, 0);
  while (true) {
    auto edges = decode_pruefer(seq, n);
    long double total = 0.0L;
    for (auto [a, b] : edges) total += weights[a * n + b];
    const bool better = kind == TreeKind::Max ? total > best.total : total < best.total;
    if (!have || better) {
      best.total = total;
      best.edges = std::move(edges);
      have = true;
    }
    // Next sequence in base-n counting order.
    std::size_t pos = 0;
    while (pos < seq.size() && ++seq[pos] == n) seq[pos++] = 0;
    if (pos == seq.size()) break;
  }
  return best;
}

}  // namespace investornet::oracle
