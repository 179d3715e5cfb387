#include "investornet/report.hpp"

#include <ostream>

#include <fmt/format.h>

#include "investornet/error.hpp"

namespace investornet {

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

namespace {

std::string optional_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return std::stod(format_number(*v));
}

}  // namespace

std::string metrics_csv_line(const MetricsRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}", r.window_index,
                     format_date(r.window_start), format_date(r.window_end),
                     category_token(r.category), r.n_active, r.n_dropped, optional_field(r.l_min),
                     optional_field(r.l_max), optional_field(r.avg_corr),
                     optional_field(r.node_jaccard_prev), optional_field(r.edge_change_prev),
                     optional_field(r.n_normalized));
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows) {
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) out << metrics_csv_line(r) << '\n';
}

nlohmann::ordered_json metrics_json(std::span<const MetricsRow> rows) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    doc.push_back({
        {"window_index", r.window_index},
        {"window_start", format_date(r.window_start)},
        {"window_end", format_date(r.window_end)},
        {"category", std::string(category_token(r.category))},
        {"n_active", r.n_active},
        {"n_dropped", r.n_dropped},
        {"l_min", optional_json(r.l_min)},
        {"l_max", optional_json(r.l_max)},
        {"avg_corr", optional_json(r.avg_corr)},
        {"node_jaccard_prev", optional_json(r.node_jaccard_prev)},
        {"edge_change_prev", optional_json(r.edge_change_prev)},
        {"n_normalized", optional_json(r.n_normalized)},
    });
  }
  return doc;
}

void write_metrics_json(std::ostream& out, std::span<const MetricsRow> rows) {
  out << metrics_json(rows).dump(2) << '\n';
}

void write_trees_csv(std::ostream& out, std::span<const SpanningTree> trees) {
  out << "window_index,window_end,category,kind,owner_a,owner_b,weight\n";
  for (const auto& t : trees) {
    const auto end = format_date(t.window.end_date);
    for (const auto& e : t.edges) {
      out << fmt::format("{},{},{},{},{},{},{}\n", t.window.index, end,
                         category_token(t.category), tree_kind_token(t.kind), t.nodes[e.a],
                         t.nodes[e.b], format_number(e.weight));
    }
  }
}

void write_nodes_csv(std::ostream& out, std::span<const NodeRecord> nodes) {
  out << "window_index,category,owner_id,node_volume\n";
  for (const auto& n : nodes) {
    out << fmt::format("{},{},{},{}\n", n.window_index, category_token(n.category), n.owner_id,
                       format_number(n.node_volume));
  }
}

void write_network_csv_header(std::ostream& out) {
  out << "window_index,category,owner_a,owner_b,rho\n";
}

void write_network_csv(std::ostream& out, const CorrelationNetwork& network) {
  const auto category = category_token(network.category);
  for (std::size_t i = 0; i < network.size(); ++i) {
    for (std::size_t j = i + 1; j < network.size(); ++j) {
      out << fmt::format("{},{},{},{},{}\n", network.window.index, category, network.nodes[i],
                         network.nodes[j], format_number(network.weight(i, j)));
    }
  }
}

AtomicFile::AtomicFile(std::filesystem::path path)
    : path_(std::move(path)), temp_(path_.string() + ".tmp") {
  out_.open(temp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw ConfigError(fmt::format("cannot write '{}'", temp_.string()));
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(temp_, ec);
  }
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw DataError(fmt::format("write failed for '{}'", temp_.string()));
  out_.close();
  std::filesystem::rename(temp_, path_);
  committed_ = true;
}

}  // namespace investornet
