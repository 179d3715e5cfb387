#include "investornet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "investornet/error.hpp"

namespace investornet {

std::string_view category_token(Category category) {
  switch (category) {
    case Category::Household: return "HH";
    case Category::NonFinancial: return "NFI";
    case Category::Financial: return "FI";
    case Category::Merged: return "MERGED";
  }
  return "?";
}

std::optional<Category> parse_investor_category(std::string_view text) {
  std::string key(text);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "hh" || key == "household" || key == "households") return Category::Household;
  if (key == "nfi" || key == "non_financial" || key == "nonfinancial" ||
      key == "non-financial") {
    return Category::NonFinancial;
  }
  if (key == "fi" || key == "financial") return Category::Financial;
  return std::nullopt;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

struct ColumnIndex {
  std::size_t owner_id, trade_date, direction, volume, sector_code;
  std::optional<std::size_t> price, ticker;
};

ColumnIndex locate_columns(std::string_view header, const CsvSchema& schema) {
  if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
  auto names = split_fields(header);
  auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (trim(names[i]) == name) return i;
    }
    return std::nullopt;
  };
  auto require = [&](const std::string& name) {
    auto idx = find(name);
    if (!idx) throw DataError(fmt::format("missing required column '{}'", name));
    return *idx;
  };
  return ColumnIndex{require(schema.owner_id),  require(schema.trade_date),
                     require(schema.direction), require(schema.volume),
                     require(schema.sector_code), find(schema.price), find(schema.ticker)};
}

// Returns an error message, or empty on success.
std::string parse_row(const std::vector<std::string_view>& fields, const ColumnIndex& cols,
                      TransactionRecord& rec) {
  auto field = [&](std::size_t idx) { return trim(fields[idx]); };

  rec.owner_id = std::string(field(cols.owner_id));
  if (rec.owner_id.empty()) return "empty owner id";

  auto date = parse_date(field(cols.trade_date));
  if (!date) return fmt::format("malformed date '{}'", field(cols.trade_date));
  rec.trade_date = *date;

  auto dir = field(cols.direction);
  if (dir == "B") {
    rec.direction = Direction::Buy;
  } else if (dir == "S") {
    rec.direction = Direction::Sell;
  } else {
    return fmt::format("unknown direction token '{}'", dir);
  }

  auto vol = field(cols.volume);
  std::int64_t volume = 0;
  auto [vptr, vec] = std::from_chars(vol.data(), vol.data() + vol.size(), volume);
  if (vec != std::errc{} || vptr != vol.data() + vol.size() || vol.empty()) {
    return fmt::format("malformed volume '{}'", vol);
  }
  if (volume <= 0) return "non-positive volume";
  rec.volume = volume;

  rec.price.reset();
  if (cols.price) {
    auto p = field(*cols.price);
    if (!p.empty()) {
      double price = 0.0;
      auto [pptr, pec] = std::from_chars(p.data(), p.data() + p.size(), price);
      if (pec != std::errc{} || pptr != p.data() + p.size()) {
        return fmt::format("malformed price '{}'", p);
      }
      if (!(price >= 0.0)) return "negative price";
      rec.price = price;
    }
  }

  rec.sector_code = std::string(field(cols.sector_code));
  return {};
}

}  // namespace

ParseResult parse_transactions(std::istream& in, const CsvSchema& schema, bool lenient) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;

  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) have_header = true;
  }
  if (!have_header) throw DataError("missing header row");
  const ColumnIndex cols = locate_columns(line, schema);
  const std::size_t needed =
      1 + std::max({cols.owner_id, cols.trade_date, cols.direction, cols.volume,
                    cols.sector_code, cols.price.value_or(0), cols.ticker.value_or(0)});

  std::optional<std::string> ticker;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++result.rows_read;
    auto fields = split_fields(line);

    std::string error;
    TransactionRecord rec;
    if (fields.size() < needed) {
      error = fmt::format("expected at least {} fields, found {}", needed, fields.size());
    } else {
      error = parse_row(fields, cols, rec);
    }

    if (error.empty() && cols.ticker) {
      std::string t(trim(fields[*cols.ticker]));
      if (!ticker) {
        ticker = t;
      } else if (*ticker != t) {
        throw DataError(fmt::format("multiple tickers in input ('{}' and '{}') at line {}",
                                    *ticker, t, line_no));
      }
    }

    if (!error.empty()) {
      error = fmt::format("{} at line {}", error, line_no);
      if (!lenient) throw DataError(error);
      result.errors.push_back({line_no, std::move(error)});
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

ParseResult read_transactions_file(const std::filesystem::path& path, const CsvSchema& schema,
                                   bool lenient) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open input file '{}'", path.string()));
  return parse_transactions(in, schema, lenient);
}

void write_transactions_csv(std::ostream& out, std::span<const TransactionRecord> records) {
  out << "owner_id,trade_date,direction,volume,price,sector_code\n";
  for (const auto& r : records) {
    out << r.owner_id << ',' << format_date(r.trade_date) << ','
        << (r.direction == Direction::Buy ? 'B' : 'S') << ',' << r.volume << ',';
    if (r.price) out << fmt::format("{:.12g}", *r.price);
    out << ',' << r.sector_code << '\n';
  }
}

TradingCalendar::TradingCalendar(std::vector<Date> dates) : dates_(std::move(dates)) {
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (!(dates_[i - 1] < dates_[i])) {
      throw DataError("calendar dates must be strictly increasing");
    }
  }
}

std::optional<std::size_t> TradingCalendar::index_of(Date date) const {
  auto it = std::lower_bound(dates_.begin(), dates_.end(), date);
  if (it == dates_.end() || *it != date) return std::nullopt;
  return static_cast<std::size_t>(it - dates_.begin());
}

TradingCalendar build_calendar(std::span<const TransactionRecord> records) {
  if (records.empty()) throw DataError("no transactions");
  std::vector<Date> dates;
  dates.reserve(records.size());
  for (const auto& r : records) dates.push_back(r.trade_date);
  std::sort(dates.begin(), dates.end());
  dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
  return TradingCalendar(std::move(dates));
}

std::size_t NetVolumeSeries::active_count(std::size_t first_day, std::size_t last_day) const {
  auto lo = std::lower_bound(active_days.begin(), active_days.end(), first_day);
  auto hi = std::upper_bound(lo, active_days.end(), last_day);
  return static_cast<std::size_t>(hi - lo);
}

std::int64_t NetVolumeSeries::gross_between(std::size_t first_day, std::size_t last_day) const {
  auto lo = std::lower_bound(active_days.begin(), active_days.end(), first_day);
  auto hi = std::upper_bound(lo, active_days.end(), last_day);
  std::int64_t total = 0;
  for (auto it = lo; it != hi; ++it) total += gross_volume[it - active_days.begin()];
  return total;
}

SeriesMap aggregate_net_volumes(std::span<const TransactionRecord> records,
                                const TradingCalendar& calendar) {
  SeriesMap series;
  // Per-owner (day -> gross) while accumulating; folded into sorted vectors after.
  std::map<std::string, std::map<std::uint32_t, std::int64_t>, std::less<>> gross;
  for (const auto& r : records) {
    auto day = calendar.index_of(r.trade_date);
    if (!day) {
      throw DataError(fmt::format("trade date {} not in calendar", format_date(r.trade_date)));
    }
    auto [it, inserted] = series.try_emplace(r.owner_id);
    if (inserted) {
      it->second.owner_id = r.owner_id;
      it->second.values.assign(calendar.size(), 0);
    }
    it->second.values[*day] += r.direction == Direction::Buy ? r.volume : -r.volume;
    gross[r.owner_id][static_cast<std::uint32_t>(*day)] += r.volume;
  }
  for (auto& [owner, s] : series) {
    const auto& days = gross.find(owner)->second;
    s.active_days.reserve(days.size());
    s.gross_volume.reserve(days.size());
    for (auto [day, g] : days) {
      s.active_days.push_back(day);
      s.gross_volume.push_back(g);
    }
  }
  return series;
}

CategoryMapping default_category_mapping() {
  return {{"HH", Category::Household},
          {"NFI", Category::NonFinancial},
          {"FI", Category::Financial}};
}

CategoryMapping parse_category_mapping(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("category mapping must be a JSON object");
  CategoryMapping mapping;
  for (const auto& [code, value] : doc.items()) {
    if (!value.is_string()) {
      throw ConfigError(fmt::format("category for sector code '{}' must be a string", code));
    }
    auto category = parse_investor_category(value.get<std::string>());
    if (!category) {
      throw ConfigError(fmt::format("unknown category '{}' for sector code '{}'",
                                    value.get<std::string>(), code));
    }
    mapping.emplace(code, *category);
  }
  return mapping;
}

CategoryMapping load_category_mapping(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open category mapping '{}'", path.string()));
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("invalid category mapping '{}': {}", path.string(), e.what()));
  }
  return parse_category_mapping(doc);
}

std::optional<Category> CategoryAssignment::find(std::string_view owner_id) const {
  auto it = owners.find(owner_id);
  if (it == owners.end()) return std::nullopt;
  return it->second;
}

CategoryAssignment categorize(std::span<const TransactionRecord> records,
                              const CategoryMapping& mapping) {
  // nullopt marks an unmapped code; an owner must resolve to one outcome.
  std::map<std::string_view, std::optional<Category>> resolved;
  for (const auto& r : records) {
    std::optional<Category> outcome;
    if (auto it = mapping.find(r.sector_code); it != mapping.end()) outcome = it->second;
    auto [it, inserted] = resolved.try_emplace(r.owner_id, outcome);
    if (!inserted && it->second != outcome) {
      throw DataError(fmt::format("inconsistent category for owner '{}'", r.owner_id));
    }
  }
  CategoryAssignment assignment;
  for (const auto& [owner, outcome] : resolved) {
    if (outcome) {
      assignment.owners.emplace(std::string(owner), *outcome);
    } else {
      ++assignment.dropped_owners;
    }
  }
  return assignment;
}

}  // namespace investornet
