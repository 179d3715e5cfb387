#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "investornet/error.hpp"
#include "investornet/ingest.hpp"
#include "investornet/parallel.hpp"
#include "investornet/pipeline.hpp"
#include "investornet/report.hpp"
#include "investornet/selftest.hpp"
#include "investornet/synth.hpp"

namespace investornet::cli {

namespace fs = std::filesystem;

namespace {

enum class Format { Csv, Json };

struct RunConfig {
  fs::path input_path;
  fs::path output_dir = ".";
  WindowSpec spec;
  std::optional<fs::path> categories_path;
  std::optional<CategoryMapping> inline_categories;
  bool export_trees = false;
  bool export_nodes = false;
  bool export_networks = false;
  bool export_price = false;
  bool lenient = false;
  Format format = Format::Csv;
  unsigned jobs = default_jobs();
};

// Values given on the command line; unset ones fall back to the config file,
// then to built-in defaults.
struct AnalyzeFlags {
  std::string input;
  std::string output_dir;
  std::string config;
  std::string categories;
  std::string format;
  int window_days = 0;
  int step_days = 0;
  int min_active_days = 0;
  int smooth_days = 0;
  unsigned jobs = 0;
  bool lenient = false;
  bool export_trees = false;
  bool export_nodes = false;
  bool export_networks = false;
  bool export_price = false;

  CLI::Option* window_opt = nullptr;
  CLI::Option* step_opt = nullptr;
  CLI::Option* min_active_opt = nullptr;
  CLI::Option* smooth_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
};

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ConfigError(fmt::format("unknown format '{}' (expected csv or json)", text));
}

template <typename T>
void config_value(const nlohmann::json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(fmt::format("config: field '{}' has the wrong type", key));
  }
}

void apply_config_file(const fs::path& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("invalid config file '{}': {}", path.string(), e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  config_value(doc, "window_days", cfg.spec.width_days);
  config_value(doc, "step_days", cfg.spec.step_days);
  config_value(doc, "min_active_days", cfg.spec.min_active_days);
  config_value(doc, "smooth_days", cfg.spec.smooth_days);
  config_value(doc, "jobs", cfg.jobs);
  config_value(doc, "lenient", cfg.lenient);
  config_value(doc, "export_trees", cfg.export_trees);
  config_value(doc, "export_nodes", cfg.export_nodes);
  config_value(doc, "export_networks", cfg.export_networks);
  config_value(doc, "export_price", cfg.export_price);
  if (doc.contains("format")) {
    std::string f;
    config_value(doc, "format", f);
    cfg.format = parse_format(f);
  }
  if (doc.contains("categories")) {
    const auto& c = doc.at("categories");
    if (c.is_string()) {
      cfg.categories_path = path.parent_path() / c.get<std::string>();
    } else {
      cfg.inline_categories = parse_category_mapping(c);
    }
  }
}

RunConfig resolve(const AnalyzeFlags& f) {
  RunConfig cfg;
  if (!f.config.empty()) apply_config_file(f.config, cfg);
  cfg.input_path = f.input;
  if (!f.output_dir.empty()) cfg.output_dir = f.output_dir;
  if (f.window_opt->count()) cfg.spec.width_days = f.window_days;
  if (f.step_opt->count()) cfg.spec.step_days = f.step_days;
  if (f.min_active_opt->count()) cfg.spec.min_active_days = f.min_active_days;
  if (f.smooth_opt->count()) cfg.spec.smooth_days = f.smooth_days;
  if (f.jobs_opt->count()) cfg.jobs = f.jobs;
  if (!f.categories.empty()) {
    cfg.categories_path = f.categories;
    cfg.inline_categories.reset();
  }
  if (!f.format.empty()) cfg.format = parse_format(f.format);
  cfg.lenient = cfg.lenient || f.lenient;
  cfg.export_trees = cfg.export_trees || f.export_trees;
  cfg.export_nodes = cfg.export_nodes || f.export_nodes;
  cfg.export_networks = cfg.export_networks || f.export_networks;
  cfg.export_price = cfg.export_price || f.export_price;
  if (cfg.jobs == 0) throw ConfigError("jobs must be >= 1");
  cfg.spec.validate();
  return cfg;
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError(fmt::format("output directory '{}' is not writable", dir.string()));
  }
}

CategoryMapping category_mapping(const RunConfig& cfg) {
  if (cfg.categories_path) return load_category_mapping(*cfg.categories_path);
  if (cfg.inline_categories) return *cfg.inline_categories;
  return default_category_mapping();
}

// Volume-weighted mean trade price per calendar day, from the input rows.
PricePath observed_prices(std::span<const TransactionRecord> records) {
  std::map<Date, std::pair<double, double>> by_day;
  for (const auto& r : records) {
    if (!r.price) continue;
    auto& [value, volume] = by_day[r.trade_date];
    value += *r.price * static_cast<double>(r.volume);
    volume += static_cast<double>(r.volume);
  }
  PricePath path;
  for (const auto& [date, acc] : by_day) {
    path.dates.push_back(date);
    path.values.push_back(acc.first / acc.second);
  }
  return path;
}

void print_summary(const PipelineResult& result) {
  for (auto group : kNetworkGroups) {
    std::size_t windows = 0, with_trees = 0;
    double active = 0.0;
    std::optional<double> lo, hi;
    for (const auto& row : result.rows) {
      if (row.category != group) continue;
      ++windows;
      active += static_cast<double>(row.n_active);
      if (row.l_min) {
        ++with_trees;
        lo = lo ? std::min(*lo, *row.l_min) : *row.l_min;
        hi = hi ? std::max(*hi, *row.l_max) : *row.l_max;
      }
    }
    const double mean_active = windows ? active / static_cast<double>(windows) : 0.0;
    std::cout << fmt::format(
        "{}: windows={} mean_active={:.1f} windows_with_trees={} min_l_min={} max_l_max={}\n",
        category_token(group), windows, mean_active, with_trees,
        lo ? format_number(*lo) : "null", hi ? format_number(*hi) : "null");
  }
}

int run_analysis(const RunConfig& cfg, bool metrics_output) {
  const auto mapping = category_mapping(cfg);
  prepare_output_dir(cfg.output_dir);
  if (!fs::exists(cfg.input_path)) {
    throw DataError(fmt::format("input file '{}' does not exist", cfg.input_path.string()));
  }

  const auto started = std::chrono::steady_clock::now();
  auto parsed = read_transactions_file(cfg.input_path, {}, cfg.lenient);
  spdlog::info("read {} rows, {} records, {} rejected", parsed.rows_read,
               parsed.records.size(), parsed.errors.size());
  for (const auto& e : parsed.errors) spdlog::warn("dropped row: {}", e.message);

  PipelineOptions options;
  options.spec = cfg.spec;
  options.jobs = cfg.jobs;
  options.collect_trees = !metrics_output || cfg.export_trees || cfg.export_nodes;

  std::optional<AtomicFile> networks;
  if (cfg.export_networks && metrics_output) {
    networks.emplace(cfg.output_dir / "networks.csv");
    write_network_csv_header(networks->stream());
    options.network_sink = [&](const CorrelationNetwork& net) {
      write_network_csv(networks->stream(), net);
    };
  }

  const auto result = run_pipeline(parsed.records, mapping, options);
  spdlog::info("{} owners ({} dropped by category), {} trading days, {} windows", result.owners,
               result.dropped_owners, result.day_count, result.windows.size());

  const auto violations = validate_rows(result.rows);
  for (const auto& v : violations) spdlog::error("validation: {}", v);
  if (!violations.empty() || result.rho_violations > 0) {
    throw DataError(fmt::format("post-run validation failed: {} row violations, {} weights",
                                violations.size(), result.rho_violations));
  }

  if (metrics_output) {
    const bool json = cfg.format == Format::Json;
    AtomicFile metrics(cfg.output_dir / (json ? "metrics.json" : "metrics.csv"));
    if (json) {
      write_metrics_json(metrics.stream(), result.rows);
    } else {
      write_metrics_csv(metrics.stream(), result.rows);
    }
    metrics.commit();
  }
  if (!metrics_output || cfg.export_trees) {
    AtomicFile trees(cfg.output_dir / "trees.csv");
    write_trees_csv(trees.stream(), result.trees);
    trees.commit();
  }
  if (!metrics_output || cfg.export_nodes) {
    AtomicFile nodes(cfg.output_dir / "nodes.csv");
    write_nodes_csv(nodes.stream(), result.nodes);
    nodes.commit();
  }
  if (cfg.export_price) {
    AtomicFile price(cfg.output_dir / "price.csv");
    write_price_csv(price.stream(), observed_prices(parsed.records));
    price.commit();
  }
  if (networks) networks->commit();

  print_summary(result);
  spdlog::info("done in {:.2f} s",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
  return kOk;
}

void add_analyze_options(CLI::App& cmd, AnalyzeFlags& f) {
  cmd.add_option("--input,-i", f.input, "Transactions CSV")->required();
  cmd.add_option("--output-dir,-o", f.output_dir, "Directory for outputs (default: .)");
  cmd.add_option("--config", f.config, "JSON run configuration (flags take precedence)");
  cmd.add_option("--categories", f.categories,
                 "JSON mapping sector_code -> household|non_financial|financial "
                 "(default: HH, NFI, FI)");
  f.window_opt = cmd.add_option("--window-days", f.window_days, "Window width W (default 126)");
  f.step_opt = cmd.add_option("--step-days", f.step_days, "Window step (default 21)");
  f.min_active_opt = cmd.add_option("--min-active-days", f.min_active_days,
                                    "Trading days required inside a window (default 20)");
  f.smooth_opt =
      cmd.add_option("--smooth-days", f.smooth_days, "Trailing moving-average width (default 5)");
  f.jobs_opt = cmd.add_option("--jobs,-j", f.jobs, "Worker threads (default: all cores)");
  cmd.add_option("--format", f.format, "Metrics output format: csv or json (default csv)");
  cmd.add_flag("--lenient", f.lenient, "Drop malformed rows instead of aborting");
}

struct SynthFlags {
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out_transactions;
  std::string out_price;
  std::map<std::string, double> numeric;
  std::string start_date;
};

}  // namespace

int run(int argc, const char* const* argv) {
  auto logger = spdlog::stderr_color_mt("investornet");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("INVESTORNET_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
  struct LoggerGuard {
    ~LoggerGuard() { spdlog::drop("investornet"); }
  } guard;

  CLI::App app{"Rolling-window investor correlation networks and spanning-tree metrics"};
  app.require_subcommand(1);
  std::string log_level;
  app.add_option("--log-level", log_level,
                 "trace|debug|info|warn|error|off (overrides INVESTORNET_LOG)");

  AnalyzeFlags analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute per-window network metrics");
  add_analyze_options(*analyze_cmd, analyze);
  analyze_cmd->add_flag("--export-trees", analyze.export_trees, "Write trees.csv");
  analyze_cmd->add_flag("--export-nodes", analyze.export_nodes, "Write nodes.csv");
  analyze_cmd->add_flag("--export-networks", analyze.export_networks,
                        "Write networks.csv with every pairwise correlation");
  analyze_cmd->add_flag("--export-price", analyze.export_price,
                        "Write price.csv (volume-weighted daily trade price)");

  AnalyzeFlags export_trees;
  auto* trees_cmd =
      app.add_subcommand("export-trees", "Write spanning trees and node tables only");
  add_analyze_options(*trees_cmd, export_trees);

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic market");
  synth_cmd->add_option("--preset", synth.preset, "Preset name (e.g. dotcom) or JSON path");
  synth_cmd->add_option("--seed", synth.seed, "Random seed (required)");
  synth_cmd->add_option("--out-transactions", synth.out_transactions, "Transactions CSV path")
      ->required();
  synth_cmd->add_option("--out-price", synth.out_price, "Price CSV path");
  const std::vector<std::pair<std::string, std::string>> overrides{
      {"households", "n_households"},
      {"nfi", "n_nfi"},
      {"fi", "n_fi"},
      {"days", "n_days"},
      {"tipping-day", "tipping_day"},
      {"herding-ramp", "herding_ramp"},
      {"contrarian-fraction", "contrarian_fraction"},
      {"contrarian-onset-day", "contrarian_onset_day"},
      {"contrarian-gain", "contrarian_gain"},
      {"base-loading", "base_loading"},
      {"institution-loading", "institution_loading"},
      {"trade-probability", "trade_probability"},
      {"noise-scale", "noise_scale"},
      {"volume-scale", "volume_scale"},
      {"price-start", "price_start"},
      {"drift-up", "drift_up"},
      {"drift-down", "drift_down"},
      {"volatility", "volatility"}};
  std::map<std::string, CLI::Option*> override_opts;
  for (const auto& [flag, field] : overrides) {
    override_opts[field] = synth_cmd->add_option("--" + flag, synth.numeric[field],
                                                 "Override " + field);
  }
  synth_cmd->add_option("--start-date", synth.start_date, "First calendar date (YYYY-MM-DD)");

  SelftestOptions selftest;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the embedded oracle checks");
  selftest_cmd->add_option("--iterations", selftest.iterations, "Random cases per check");
  selftest_cmd->add_option("--seed", selftest.seed, "Random seed");
  selftest_cmd->add_flag("--inject-fault", selftest.inject_fault,
                         "Corrupt implementation outputs (testing the checks themselves)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << nlohmann::json{{"error", "config"}, {"message", e.what()}}.dump() << '\n';
    return kConfigError;
  }
  if (!log_level.empty()) spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (analyze_cmd->parsed()) return run_analysis(resolve(analyze), true);
    if (trees_cmd->parsed()) return run_analysis(resolve(export_trees), false);

    if (synth_cmd->parsed()) {
      if (!synth.seed) throw ConfigError("--seed is required");
      SynthConfig config = synth.preset.empty() ? SynthConfig{} : load_synth_preset(synth.preset);
      nlohmann::json patch = nlohmann::json::object();
      for (const auto& [field, opt] : override_opts) {
        if (!opt->count()) continue;
        const double v = synth.numeric[field];
        if (field.rfind("n_", 0) == 0 || field.ends_with("_day")) {
          if (v != std::floor(v)) {
            throw ConfigError(fmt::format("{} must be an integer, got {}", field, v));
          }
          patch[field] = static_cast<long long>(v);
        } else {
          patch[field] = v;
        }
      }
      if (!synth.start_date.empty()) patch["start_date"] = synth.start_date;
      patch["seed"] = *synth.seed;
      config = synth_config_from_json(patch, config);
      config.validate();

      const auto market = generate_market(config);
      AtomicFile tx(synth.out_transactions);
      write_transactions_csv(tx.stream(), market.records);
      std::optional<AtomicFile> price;
      if (!synth.out_price.empty()) {
        price.emplace(synth.out_price);
        write_price_csv(price->stream(), market.price);
        price->commit();
      }
      tx.commit();
      std::cout << fmt::format("synth: {} records over {} days, seed {}\n",
                               market.records.size(), config.n_days, config.seed);
      return kOk;
    }

    if (selftest_cmd->parsed()) {
      const auto report = run_selftest(selftest);
      std::size_t failed_cases = 0;
      for (const auto& check : report.checks) {
        std::cout << fmt::format("{} {}: {} cases, {} failures{}\n",
                                 check.failures == 0 ? "PASS" : "FAIL", check.name, check.cases,
                                 check.failures,
                                 check.first_failure.empty() ? "" : " (" + check.first_failure + ")");
        failed_cases += check.failures;
      }
      std::cout << fmt::format("selftest: {} checks, {} failed cases\n", report.checks.size(),
                               failed_cases);
      return report.passed() ? kOk : kSelftestFailure;
    }
  } catch (const ConfigError& e) {
    std::cerr << nlohmann::json{{"error", "config"}, {"message", e.what()}}.dump() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "data"}, {"message", e.what()}}.dump() << '\n';
    return kDataError;
  }
  return kConfigError;
}

}  // namespace investornet::cli
