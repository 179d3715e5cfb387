#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <vector>

#include <json.hpp>

#include "investornet/date.hpp"
#include "investornet/ingest.hpp"

namespace investornet {

// Single-factor synthetic market. Every investor-day trades with probability
// `trade_probability`; a trade's signed net volume is
//   round(loading(t) * F(t) * volume_scale + noise_scale * volume_scale * z)
// where F(t) is the day's standard normal log-return shock: the log return is
// drift + volatility * F(t), less a small linear tilt that makes the tipping
// day the price maximum. F(0) = 0.
// Household loadings grow by `herding_ramp` per day until the tipping day; a
// `contrarian_fraction` of households multiplies its loading by
// -contrarian_gain from `contrarian_onset_day` on. Institution loadings are
// constant. The model is an artifact of this project, not an estimate of
// any real market.
struct SynthConfig {
  int n_households = 600;
  int n_nfi = 80;
  int n_fi = 40;
  int n_days = 1252;
  int tipping_day = 560;
  double herding_ramp = 0.0;
  double contrarian_fraction = 0.0;
  int contrarian_onset_day = 0;
  double contrarian_gain = 1.0;
  double base_loading = 1.0;         // households: base_loading * U(0.5, 1.5)
  double institution_loading = 1.0;  // institutions: +/- institution_loading * U(0.5, 1.5)
  double trade_probability = 0.3;
  double noise_scale = 1.0;
  double volume_scale = 100.0;
  double price_start = 20.0;
  double drift_up = 0.002;
  double drift_down = -0.002;
  double volatility = 0.02;
  Date start_date{std::chrono::year{1998}, std::chrono::January, std::chrono::day{2}};
  std::uint64_t seed = 0;

  // Throws ConfigError when a field is out of range.
  void validate() const;
};

// Overrides fields of `base` with the keys present in `doc` (same names as
// the struct fields; start_date as YYYY-MM-DD). Unknown keys are rejected.
SynthConfig synth_config_from_json(const nlohmann::json& doc, SynthConfig base = {});
nlohmann::json synth_config_to_json(const SynthConfig& config);

// Loads `presets/<name>.json` from the source tree, or a path to a JSON file.
SynthConfig load_synth_preset(const std::string& name_or_path);

struct PricePath {
  std::vector<Date> dates;
  std::vector<double> values;
};

struct SynthInvestor {
  std::string owner_id;
  std::string sector_code;
  double loading = 0.0;  // at day 0
  bool contrarian = false;
};

struct SynthMarket {
  std::vector<TransactionRecord> records;  // date-major, then owner order
  PricePath price;
  std::vector<SynthInvestor> investors;   // households, then NFI, then FI
};

// Owner ids are H00001.., N00001.., F00001..; sector codes HH, NFI, FI. The
// calendar is Monday-Friday business days from start_date. Output is a pure
// function of the config: the generator is std::mt19937_64 (bitstream fixed
// by the C++ standard) with Box-Muller normals and 53-bit uniforms.
SynthMarket generate_market(const SynthConfig& config);

// date,price
void write_price_csv(std::ostream& out, const PricePath& path);

// Raw draws used by the generator, exposed for tests.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double normal();   // standard normal
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace investornet
