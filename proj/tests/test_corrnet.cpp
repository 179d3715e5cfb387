#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "investornet/corrnet.hpp"
#include "investornet/oracle.hpp"

using namespace investornet;

namespace {

WindowPanel panel_of(const std::vector<std::vector<double>>& rows) {
  WindowPanel panel;
  panel.category = Category::Household;
  panel.width = rows.empty() ? 0 : rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    panel.investors.push_back("o" + std::to_string(100 + i));
    panel.values.insert(panel.values.end(), rows[i].begin(), rows[i].end());
    panel.node_volume.push_back(static_cast<double>(i));
  }
  return panel;
}

std::vector<std::vector<double>> random_rows(std::mt19937_64& rng, std::size_t n, std::size_t width) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(width));
  for (auto& row : rows) {
    for (auto& x : row) x = rng() % 4 == 0 ? std::round(normal(rng) * 300.0) : 0.0;
    row[rng() % width] += 1.0;  // never constant
    row[rng() % width] -= 2.0;
  }
  return rows;
}

}  // namespace

TEST_CASE("pearson on exact examples") {
  const std::vector<double> x{1, 2, 3}, y{2, 4, 6}, z{3, 2, 1};
  CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson(x, z) == doctest::Approx(-1.0).epsilon(1e-15));
  const std::vector<double> a{1, 0, 2, 0}, b{0, 1, 0, 2};
  CHECK(std::abs(pearson(a, b) - (-9.0 / 11.0)) < 1e-12);
  CHECK(std::abs(oracle::two_pass_pearson(a, b) - (-9.0 / 11.0)) < 1e-15);
}

TEST_CASE("pearson errors") {
  const std::vector<double> flat{4, 4, 4}, x{1, 2, 3}, shorter{1, 2};
  CHECK_THROWS_AS(pearson(flat, x), UndefinedCorrelation);
  CHECK_THROWS_AS(pearson(x, flat), UndefinedCorrelation);
  CHECK_THROWS_AS(pearson(x, shorter), std::invalid_argument);
}

TEST_CASE("pearson properties") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int round = 0; round < 200; ++round) {
    std::vector<double> x(126), y(126);
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] = normal(rng) * 1e6;
      y[k] = 0.3 * x[k] + normal(rng) * 5e5;
    }
    const double r = pearson(x, y);
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    CHECK(r == pearson(y, x));
    CHECK(std::abs(r - oracle::two_pass_pearson(x, y)) < 1e-10);

    // Positive affine maps leave it unchanged; a negative scale flips the sign.
    std::vector<double> shifted(x.size()), negated(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      shifted[k] = 3.0 * x[k] + 1e5;
      negated[k] = -x[k];
    }
    CHECK(std::abs(pearson(shifted, y) - r) < 1e-10);
    CHECK(std::abs(pearson(negated, y) + r) < 1e-12);
    CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("network of two identical rows") {
  auto net = correlation_network(panel_of({{1, 5, 2, 0}, {1, 5, 2, 0}}));
  REQUIRE(net.size() == 2);
  CHECK(net.edge_count() == 1);
  CHECK(net.weight(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(net.degenerate());
}

TEST_CASE("constant rows are dropped") {
  auto net = correlation_network(panel_of({{1, 5, 2, 0}, {0, 0, 0, 0}, {2, 1, 7, 3}, {3, 3, 3, 3}}));
  CHECK(net.nodes == std::vector<std::string>{"o100", "o102"});
  CHECK(net.dropped_zero_variance == std::vector<std::string>{"o101", "o103"});
  CHECK(net.node_volume == std::vector<double>{0.0, 2.0});
  CHECK(net.weight(0, 1) == pearson(std::vector<double>{1, 5, 2, 0}, std::vector<double>{2, 1, 7, 3}));

  auto degenerate = correlation_network(panel_of({{1, 5, 2, 0}, {0, 0, 0, 0}}));
  CHECK(degenerate.degenerate());
  CHECK(degenerate.edge_count() == 0);
  CHECK(correlation_network(panel_of({})).degenerate());
}

TEST_CASE("network shape, symmetry and agreement with pearson") {
  std::mt19937_64 rng(17);
  const auto rows = random_rows(rng, 4, 126);
  auto net = correlation_network(panel_of(rows));
  REQUIRE(net.size() == 4);
  CHECK(net.edge_count() == 6);
  CHECK(net.weights.size() == 16);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(net.weight(i, i) == 1.0);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(net.weight(i, j) == net.weight(j, i));
      if (i != j) CHECK(net.weight(i, j) == pearson(rows[i], rows[j]));
    }
  }
}

TEST_CASE("network weights are bit-identical for any thread count") {
  std::mt19937_64 rng(23);
  for (std::size_t n : {2, 7, 33, 130}) {
    const auto panel = panel_of(random_rows(rng, n, 126));
    const auto one = correlation_network(panel, 1);
    for (unsigned jobs : {2u, 3u, 8u}) {
      const auto many = correlation_network(panel, jobs);
      CHECK(many.nodes == one.nodes);
      CHECK(many.weights == one.weights);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (one.weight(i, j) != pearson(panel.row(i), panel.row(j))) {
          FAIL("network weight differs from pearson at ", i, ",", j);
        }
        CHECK(std::abs(one.weight(i, j) - oracle::two_pass_pearson(panel.row(i), panel.row(j))) <
              1e-10);
      }
    }
  }
}

TEST_CASE("make_network validates its input") {
  auto net = make_network({"a", "b"}, {1.0, 0.3, 0.3, 1.0});
  CHECK(net.weight(0, 1) == 0.3);
  CHECK_THROWS(make_network({"a", "b"}, {1.0, 0.3, 0.3}));
}
