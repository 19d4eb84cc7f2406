#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pilot::io {

using Json = nlohmann::json;

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

/// RFC-4180 CSV writer: comma separated, CRLF line endings, quoted when needed.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  void end_row();

 private:
  void raw(std::string_view text);
  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

std::string quote_csv(std::string_view text);

/// Throws InvalidInput when `object` has a key outside `allowed`.
void reject_unknown_keys(const Json& object, std::initializer_list<std::string_view> allowed,
                         std::string_view context);

}  // namespace pilot::io
