#include "investornet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "investornet/error.hpp"

namespace investornet {

double PortableRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

void SynthConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("synth config: " + msg); };
  if (n_households < 0 || n_nfi < 0 || n_fi < 0) fail("investor counts must be >= 0");
  if (n_households + n_nfi + n_fi < 2) fail("need at least 2 investors");
  if (n_days < 1) fail("days must be >= 1");
  if (tipping_day < 0 || tipping_day >= n_days) fail("tipping_day must be in [0, days)");
  if (!(herding_ramp >= 0.0)) fail("herding_ramp must be >= 0");
  if (!(contrarian_fraction >= 0.0 && contrarian_fraction <= 1.0)) {
    fail("contrarian_fraction must be in [0, 1]");
  }
  if (contrarian_onset_day < 0) fail("contrarian_onset_day must be >= 0");
  if (!(contrarian_gain > 0.0)) fail("contrarian_gain must be > 0");
  if (!(base_loading >= 0.0)) fail("base_loading must be >= 0");
  if (!(institution_loading >= 0.0)) fail("institution_loading must be >= 0");
  if (!(trade_probability > 0.0 && trade_probability <= 1.0)) {
    fail("trade_probability must be in (0, 1]");
  }
  if (!(noise_scale > 0.0)) fail("noise_scale must be > 0");
  if (!(volume_scale > 0.0)) fail("volume_scale must be > 0");
  if (!(price_start > 0.0)) fail("price_start must be > 0");
  if (!(volatility > 0.0)) fail("volatility must be > 0");
  if (!std::isfinite(drift_up) || !std::isfinite(drift_down)) fail("drifts must be finite");
  if (!start_date.ok()) fail("start_date is not a valid date");
}

namespace {

template <typename T>
void read_field(const nlohmann::json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(fmt::format("synth config: field '{}' has the wrong type", key));
  }
}

}  // namespace

SynthConfig synth_config_from_json(const nlohmann::json& doc, SynthConfig base) {
  if (!doc.is_object()) throw ConfigError("synth config must be a JSON object");
  static const std::vector<std::string> known{
      "n_households", "n_nfi",          "n_fi",          "n_days",
      "tipping_day",  "herding_ramp",   "contrarian_fraction",
      "contrarian_onset_day",           "contrarian_gain", "base_loading", "institution_loading",
      "trade_probability",              "noise_scale",   "volume_scale",
      "price_start",  "drift_up",       "drift_down",    "volatility",
      "start_date",   "seed",           "description"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(fmt::format("synth config: unknown field '{}'", key));
    }
  }
  read_field(doc, "n_households", base.n_households);
  read_field(doc, "n_nfi", base.n_nfi);
  read_field(doc, "n_fi", base.n_fi);
  read_field(doc, "n_days", base.n_days);
  read_field(doc, "tipping_day", base.tipping_day);
  read_field(doc, "herding_ramp", base.herding_ramp);
  read_field(doc, "contrarian_fraction", base.contrarian_fraction);
  read_field(doc, "contrarian_onset_day", base.contrarian_onset_day);
  read_field(doc, "contrarian_gain", base.contrarian_gain);
  read_field(doc, "base_loading", base.base_loading);
  read_field(doc, "institution_loading", base.institution_loading);
  read_field(doc, "trade_probability", base.trade_probability);
  read_field(doc, "noise_scale", base.noise_scale);
  read_field(doc, "volume_scale", base.volume_scale);
  read_field(doc, "price_start", base.price_start);
  read_field(doc, "drift_up", base.drift_up);
  read_field(doc, "drift_down", base.drift_down);
  read_field(doc, "volatility", base.volatility);
  read_field(doc, "seed", base.seed);
  if (doc.contains("start_date")) {
    std::string text;
    read_field(doc, "start_date", text);
    auto date = parse_date(text);
    if (!date) throw ConfigError(fmt::format("synth config: bad start_date '{}'", text));
    base.start_date = *date;
  }
  return base;
}

nlohmann::json synth_config_to_json(const SynthConfig& c) {
  return {{"n_households", c.n_households},
          {"n_nfi", c.n_nfi},
          {"n_fi", c.n_fi},
          {"n_days", c.n_days},
          {"tipping_day", c.tipping_day},
          {"herding_ramp", c.herding_ramp},
          {"contrarian_fraction", c.contrarian_fraction},
          {"contrarian_onset_day", c.contrarian_onset_day},
          {"contrarian_gain", c.contrarian_gain},
          {"base_loading", c.base_loading},
          {"institution_loading", c.institution_loading},
          {"trade_probability", c.trade_probability},
          {"noise_scale", c.noise_scale},
          {"volume_scale", c.volume_scale},
          {"price_start", c.price_start},
          {"drift_up", c.drift_up},
          {"drift_down", c.drift_down},
          {"volatility", c.volatility},
          {"start_date", format_date(c.start_date)},
          {"seed", c.seed}};
}

SynthConfig load_synth_preset(const std::string& name_or_path) {
  std::filesystem::path path(name_or_path);
  if (!std::filesystem::exists(path)) {
    path = std::filesystem::path(INVESTORNET_PRESET_DIR) / (name_or_path + ".json");
  }
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("unknown preset '{}'", name_or_path));
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("invalid preset '{}': {}", path.string(), e.what()));
  }
  return synth_config_from_json(doc);
}

namespace {

struct Investor {
  std::string owner_id;
  const char* sector_code;
  bool herding;
  bool contrarian;
  double base_loading;
};

// Log returns are drift(t) + volatility * F(t) with F(t) iid standard normal.
// A minimal tilt c * |t - tipping_day| is then subtracted from the log path so
// that the tipping day is its strict maximum; the tilt only shifts the drift.
PricePath simulate_price(const SynthConfig& c, PortableRng& rng, std::vector<double>& factor) {
  const auto days = static_cast<std::size_t>(c.n_days);
  const auto tip = static_cast<std::size_t>(c.tipping_day);
  factor.assign(days, 0.0);
  std::vector<double> log_price(days);
  double level = std::log(c.price_start);
  for (std::size_t t = 0; t < days; ++t) {
    if (t > 0) {
      factor[t] = rng.normal();
      level += (t <= tip ? c.drift_up : c.drift_down) + c.volatility * factor[t];
    }
    log_price[t] = level;
  }
  double tilt = 0.0;
  for (std::size_t t = 0; t < days; ++t) {
    if (t == tip) continue;
    const double distance = std::abs(static_cast<double>(t) - static_cast<double>(tip));
    tilt = std::max(tilt, (log_price[t] - log_price[tip]) / distance);
  }
  tilt += 1e-6;
  for (std::size_t t = 0; t < days; ++t) {
    const double distance = std::abs(static_cast<double>(t) - static_cast<double>(tip));
    log_price[t] -= tilt * distance;
  }
  // Re-anchor so the path still starts at price_start.
  const double anchor = std::log(c.price_start) - log_price[0];

  PricePath path;
  path.dates.reserve(days);
  path.values.reserve(days);
  Date date = c.start_date;
  const auto weekday = std::chrono::weekday{std::chrono::sys_days{date}};
  if (weekday == std::chrono::Saturday || weekday == std::chrono::Sunday) {
    date = next_business_day(date);
  }
  for (std::size_t t = 0; t < days; ++t) {
    path.dates.push_back(date);
    path.values.push_back(std::exp(log_price[t] + anchor));
    date = next_business_day(date);
  }
  return path;
}

}  // namespace

SynthMarket generate_market(const SynthConfig& c) {
  c.validate();
  PortableRng rng(c.seed);
  SynthMarket market;
  std::vector<double> factor;
  market.price = simulate_price(c, rng, factor);

  std::vector<Investor> investors;
  for (int i = 0; i < c.n_households; ++i) {
    investors.push_back({fmt::format("H{:05d}", i + 1), "HH", true, false,
                         c.base_loading * (0.5 + rng.uniform())});
  }
  // Contrarians: a seeded random subset of households.
  const auto n_contrarian = static_cast<std::size_t>(
      std::llround(c.contrarian_fraction * static_cast<double>(c.n_households)));
  std::vector<std::size_t> order(static_cast<std::size_t>(c.n_households));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.next() % i);
    std::swap(order[i - 1], order[j]);
  }
  for (std::size_t k = 0; k < n_contrarian; ++k) investors[order[k]].contrarian = true;

  auto institution = [&](const char* prefix, const char* code, int count) {
    for (int i = 0; i < count; ++i) {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      investors.push_back({fmt::format("{}{:05d}", prefix, i + 1), code, false, false,
                           sign * c.institution_loading * (0.5 + rng.uniform())});
    }
  };
  institution("N", "NFI", c.n_nfi);
  institution("F", "FI", c.n_fi);

  for (const auto& inv : investors) {
    market.investors.push_back({inv.owner_id, inv.sector_code, inv.base_loading, inv.contrarian});
  }

  const auto& prices = market.price.values;
  const auto tip = static_cast<double>(c.tipping_day);
  for (std::size_t t = 0; t < prices.size(); ++t) {
    const double price = std::round(prices[t] * 100.0) / 100.0;
    const double elapsed = std::min(static_cast<double>(t), tip);
    for (const auto& inv : investors) {
      if (!(rng.uniform() < c.trade_probability)) continue;
      double loading = inv.base_loading;
      if (inv.herding) loading += c.herding_ramp * elapsed;
      if (inv.contrarian && t >= static_cast<std::size_t>(c.contrarian_onset_day)) {
        loading *= -c.contrarian_gain;
      }
      const double signal = loading * factor[t] * c.volume_scale;
      std::int64_t net = 0;
      for (int attempt = 0; attempt < 16 && net == 0; ++attempt) {
        net = std::llround(signal + c.noise_scale * c.volume_scale * rng.normal());
      }
      if (net == 0) net = signal < 0.0 ? -1 : 1;
      TransactionRecord rec;
      rec.owner_id = inv.owner_id;
      rec.trade_date = market.price.dates[t];
      rec.direction = net > 0 ? Direction::Buy : Direction::Sell;
      rec.volume = net > 0 ? net : -net;
      rec.price = price;
      rec.sector_code = inv.sector_code;
      market.records.push_back(std::move(rec));
    }
  }
  return market;
}

void write_price_csv(std::ostream& out, const PricePath& path) {
  out << "date,price\n";
  for (std::size_t t = 0; t < path.values.size(); ++t) {
    out << format_date(path.dates[t]) << ',' << fmt::format("{:.12g}", path.values[t]) << '\n';
  }
}

}  // namespace investornet
