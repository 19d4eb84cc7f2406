#include "pilot/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "pilot/error.hpp"

namespace pilot::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string quote_csv(std::string_view text) {
  const bool needs = text.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  for (const auto& h : header) cell(h);
  end_row();
}

void CsvWriter::raw(std::string_view text) {
  if (filled_ > 0) out_ << ',';
  out_ << text;
  ++filled_;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  raw(quote_csv(text));
  return *this;
}

CsvWriter& CsvWriter::cell(double v) {
  raw(format_number(v));
  return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
  raw(std::to_string(v));
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) {
    throw Error("CSV row has " + std::to_string(filled_) + " cells, expected " +
                std::to_string(columns_));
  }
  out_ << "\r\n";
  filled_ = 0;
}

void reject_unknown_keys(const Json& object, std::initializer_list<std::string_view> allowed,
                         std::string_view context) {
  if (!object.is_object()) {
    throw InvalidInput(std::string(context) + " must be a JSON object");
  }
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidInput("unknown field '" + key + "' in " + std::string(context));
    }
  }
}

}  // namespace pilot::io
