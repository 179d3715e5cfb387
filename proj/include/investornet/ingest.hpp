#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "investornet/date.hpp"

namespace investornet {

enum class Direction { Buy, Sell };

// The three investor categories plus the Merged pseudo-category (union of
// all three) used when building networks.
enum class Category { Household, NonFinancial, Financial, Merged };

inline constexpr std::array<Category, 3> kInvestorCategories{
    Category::Household, Category::NonFinancial, Category::Financial};
inline constexpr std::array<Category, 4> kNetworkGroups{
    Category::Household, Category::NonFinancial, Category::Financial, Category::Merged};

// Output tokens: HH, NFI, FI, MERGED.
std::string_view category_token(Category category);

// Accepts the output tokens as well as long names ("household",
// "non_financial", "financial"), case-insensitively. Merged is never
// returned: it is not an investor category.
std::optional<Category> parse_investor_category(std::string_view text);

struct TransactionRecord {
  std::string owner_id;
  Date trade_date;
  Direction direction = Direction::Buy;
  std::int64_t volume = 0;
  std::optional<double> price;
  std::string sector_code;
};

// Header names of the input CSV. The ticker column is optional; when the file
// has it, every row must carry the same value.
struct CsvSchema {
  std::string owner_id = "owner_id";
  std::string trade_date = "trade_date";
  std::string direction = "direction";
  std::string volume = "volume";
  std::string price = "price";
  std::string sector_code = "sector_code";
  std::string ticker = "ticker";
};

struct RowError {
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<TransactionRecord> records;
  std::size_t rows_read = 0;
  // Only populated in lenient mode; strict mode throws on the first error.
  std::vector<RowError> errors;
};

// Parses comma-delimited UTF-8 text with a header row. Throws DataError on a
// missing required column or, unless `lenient`, on the first bad row.
ParseResult parse_transactions(std::istream& in, const CsvSchema& schema = {},
                               bool lenient = false);
ParseResult read_transactions_file(const std::filesystem::path& path,
                                   const CsvSchema& schema = {}, bool lenient = false);

// Writes records in the canonical input schema (no ticker column).
void write_transactions_csv(std::ostream& out, std::span<const TransactionRecord> records);

class TradingCalendar {
 public:
  TradingCalendar() = default;
  // `dates` must be strictly increasing.
  explicit TradingCalendar(std::vector<Date> dates);

  std::size_t size() const { return dates_.size(); }
  Date date(std::size_t day) const { return dates_.at(day); }
  const std::vector<Date>& dates() const { return dates_; }
  std::optional<std::size_t> index_of(Date date) const;

 private:
  std::vector<Date> dates_;
};

TradingCalendar build_calendar(std::span<const TransactionRecord> records);

struct NetVolumeSeries {
  std::string owner_id;
  // values[t] = shares bought - shares sold on day t; 0 on silent days.
  std::vector<std::int64_t> values;
  // Sorted day indices with at least one transaction.
  std::vector<std::uint32_t> active_days;
  // Shares bought + shares sold, parallel to active_days.
  std::vector<std::int64_t> gross_volume;

  std::size_t active_count(std::size_t first_day, std::size_t last_day) const;
  std::int64_t gross_between(std::size_t first_day, std::size_t last_day) const;
};

using SeriesMap = std::map<std::string, NetVolumeSeries, std::less<>>;

SeriesMap aggregate_net_volumes(std::span<const TransactionRecord> records,
                                const TradingCalendar& calendar);

using CategoryMapping = std::map<std::string, Category, std::less<>>;

// HH -> Household, NFI -> NonFinancial, FI -> Financial.
CategoryMapping default_category_mapping();
// JSON object {"<sector_code>": "<category>", ...}.
CategoryMapping parse_category_mapping(const nlohmann::json& doc);
CategoryMapping load_category_mapping(const std::filesystem::path& path);

struct CategoryAssignment {
  std::map<std::string, Category, std::less<>> owners;
  std::size_t dropped_owners = 0;

  std::optional<Category> find(std::string_view owner_id) const;
};

// Owners whose sector code is unmapped are dropped and counted. An owner
// whose rows resolve to different outcomes throws DataError.
CategoryAssignment categorize(std::span<const TransactionRecord> records,
                              const CategoryMapping& mapping);

}  // namespace investornet
