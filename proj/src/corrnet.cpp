#include "investornet/corrnet.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "investornet/parallel.hpp"

namespace investornet {

namespace {

// Centers and scales a row to unit Euclidean norm, so that the correlation of
// two rows is their dot product. Returns nullopt for a constant row.
std::optional<std::vector<double>> standardize(std::span<const double> x) {
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
    return std::nullopt;
  }
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / static_cast<double>(x.size());
  std::vector<double> z(x.size());
  double ss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    z[k] = x[k] - mean;
    ss += z[k] * z[k];
  }
  if (!(ss > 0.0)) return std::nullopt;
  const double inv_norm = 1.0 / std::sqrt(ss);
  for (double& v : z) v *= inv_norm;
  return z;
}

double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

// Sequential accumulation; the tiled kernel below reproduces this order exactly.
double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k] * y[k];
  return s;
}

constexpr std::size_t kTileRows = 4;
constexpr std::size_t kTileCols = 8;

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("pearson: need at least 2 observations");
  auto zx = standardize(x);
  auto zy = standardize(y);
  if (!zx || !zy) throw UndefinedCorrelation("undefined correlation: zero variance");
  return clamp_unit(dot(zx->data(), zy->data(), x.size()));
}

CorrelationNetwork make_network(std::vector<std::string> nodes, std::vector<double> weights) {
  if (weights.size() != nodes.size() * nodes.size()) {
    throw std::invalid_argument("make_network: weights must be n x n");
  }
  CorrelationNetwork net;
  net.nodes = std::move(nodes);
  net.weights = std::move(weights);
  net.node_volume.assign(net.nodes.size(), 0.0);
  return net;
}

CorrelationNetwork correlation_network(const WindowPanel& panel, unsigned jobs) {
  if (panel.rows() > 0 && panel.width < 2) {
    throw std::invalid_argument("correlation_network: window width must be >= 2");
  }
  CorrelationNetwork net;
  net.window = panel.window;
  net.category = panel.category;

  const std::size_t width = panel.width;
  std::vector<std::vector<double>> standardized;
  for (std::size_t i = 0; i < panel.rows(); ++i) {
    auto z = standardize(panel.row(i));
    if (!z) {
      net.dropped_zero_variance.push_back(panel.investors[i]);
      continue;
    }
    net.nodes.push_back(panel.investors[i]);
    net.node_volume.push_back(panel.node_volume[i]);
    standardized.push_back(std::move(*z));
  }

  const std::size_t n = net.nodes.size();
  net.weights.assign(n * n, 1.0);
  if (n < 2) return net;

  // rows: row-major, padded to a multiple of kTileRows.
  // cols: transposed (day-major), padded to a multiple of kTileCols.
  const std::size_t row_blocks = (n + kTileRows - 1) / kTileRows;
  const std::size_t padded_cols = (n + kTileCols - 1) / kTileCols * kTileCols;
  std::vector<double> rows(row_blocks * kTileRows * width, 0.0);
  std::vector<double> cols(width * padded_cols, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(standardized[i].begin(), standardized[i].end(), rows.begin() + i * width);
    for (std::size_t k = 0; k < width; ++k) cols[k * padded_cols + i] = standardized[i][k];
  }
  standardized.clear();

  parallel_for(row_blocks, jobs, [&](std::size_t block) {
    const std::size_t i0 = block * kTileRows;
    const double* x = rows.data() + i0 * width;
    for (std::size_t j0 = i0 / kTileCols * kTileCols; j0 < n; j0 += kTileCols) {
      double acc[kTileRows][kTileCols] = {};
      const double* y = cols.data() + j0;
      for (std::size_t k = 0; k < width; ++k) {
        const double* yk = y + k * padded_cols;
        for (std::size_t a = 0; a < kTileRows; ++a) {
          const double xa = x[a * width + k];
          for (std::size_t b = 0; b < kTileCols; ++b) acc[a][b] += xa * yk[b];
        }
      }
      for (std::size_t a = 0; a < kTileRows; ++a) {
        const std::size_t i = i0 + a;
        if (i >= n) break;
        for (std::size_t b = 0; b < kTileCols; ++b) {
          const std::size_t j = j0 + b;
          if (j <= i || j >= n) continue;
          const double r = clamp_unit(acc[a][b]);
          net.weights[i * n + j] = r;
          net.weights[j * n + i] = r;
        }
      }
    }
  });
  return net;
}

}  // namespace investornet
