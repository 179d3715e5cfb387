#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "investornet/ingest.hpp"
#include "investornet/synth.hpp"

namespace investornet::testing {

inline Date day(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline TransactionRecord trade(std::string owner, Date date, Direction dir, std::int64_t volume,
                               std::string sector = "HH") {
  TransactionRecord r;
  r.owner_id = std::move(owner);
  r.trade_date = date;
  r.direction = dir;
  r.volume = volume;
  r.sector_code = std::move(sector);
  return r;
}

// `n` consecutive business days from 1998-01-02.
inline std::vector<Date> business_days(std::size_t n) {
  std::vector<Date> out;
  Date d = day(1998, 1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(d);
    d = next_business_day(d);
  }
  return out;
}

inline ParseResult parse_text(const std::string& text, bool lenient = false) {
  std::istringstream in(text);
  return parse_transactions(in, {}, lenient);
}

// Small market for pipeline-level tests: 14 windows under the default spec.
inline SynthConfig small_market(std::uint64_t seed) {
  SynthConfig c;
  c.n_households = 30;
  c.n_nfi = 10;
  c.n_fi = 8;
  c.n_days = 400;
  c.tipping_day = 200;
  c.herding_ramp = 0.004;
  c.contrarian_fraction = 0.2;
  c.contrarian_onset_day = 150;
  c.base_loading = 0.5;
  c.trade_probability = 0.5;
  c.seed = seed;
  return c;
}

// CSV line without its last field.
inline std::string drop_last_field(const std::string& line) {
  return line.substr(0, line.rfind(','));
}

}  // namespace investornet::testing
