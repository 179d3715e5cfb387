#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "investornet/pipeline.hpp"

namespace investornet {

// 12 significant digits, shortest form ("%.12g").
std::string format_number(double value);

inline constexpr std::string_view kMetricsHeader =
    "window_index,window_start,window_end,category,n_active,n_dropped,l_min,l_max,avg_corr,"
    "node_jaccard_prev,edge_change_prev,n_normalized";

// One CSV line per row, without trailing newline. Null metrics are empty fields.
std::string metrics_csv_line(const MetricsRow& row);
void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);

// Array of objects with the CSV field names; null metrics are JSON null and
// numbers carry the same 12 significant digits as the CSV.
nlohmann::ordered_json metrics_json(std::span<const MetricsRow> rows);
void write_metrics_json(std::ostream& out, std::span<const MetricsRow> rows);

// window_index,window_end,category,kind,owner_a,owner_b,weight
void write_trees_csv(std::ostream& out, std::span<const SpanningTree> trees);

// window_index,category,owner_id,node_volume
void write_nodes_csv(std::ostream& out, std::span<const NodeRecord> nodes);

// window_index,category,owner_a,owner_b,rho (owner_a < owner_b).
void write_network_csv_header(std::ostream& out);
void write_network_csv(std::ostream& out, const CorrelationNetwork& network);

// Writes to "<path>.tmp" and renames onto `path` on commit(). An uncommitted
// file is removed on destruction, so a failed run never leaves partial output.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile();

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace investornet
