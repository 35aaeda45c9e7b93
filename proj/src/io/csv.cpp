#include "convexreg/io/csv.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "convexreg/error.hpp"
#include "convexreg/io/atomic_write.hpp"

namespace convexreg::io {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_fields(std::string_view line)
{
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back(trim(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  out.emplace_back(trim(field));
  return out;
}

} // namespace

std::size_t CsvTable::column_index(std::string_view name) const
{
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) {
      return k;
    }
  }
  fail(ErrorKind::parse, "missing column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text, std::string_view source)
{
  CsvTable table;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  if (text.starts_with("\xEF\xBB\xBF")) {
    pos = 3;
  }
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) {
        break;
      }
      continue;
    }
    auto fields = split_fields(line);
    if (!have_header) {
      table.columns = std::move(fields);
      have_header = true;
    } else {
      if (fields.size() != table.columns.size()) {
        fail(ErrorKind::parse, fmt::format("{}: line {}: expected {} fields, found {}", source,
                                           line_no, table.columns.size(), fields.size()));
      }
      table.rows.push_back(std::move(fields));
      table.line_numbers.push_back(line_no);
    }
    if (end == text.size()) {
      break;
    }
  }
  if (!have_header) {
    fail(ErrorKind::parse, std::string(source) + ": empty file (no header row)");
  }
  return table;
}

smoothing::Dataset dataset_from_csv(const CsvTable& table, std::span<const std::string> x_cols,
                                    const std::string& y_col, std::string_view source)
{
  if (x_cols.empty()) {
    fail(ErrorKind::parse, "no feature columns selected");
  }
  std::vector<std::size_t> xi;
  for (const auto& c : x_cols) {
    try {
      xi.push_back(table.column_index(c));
    } catch (const Error& e) {
      fail(ErrorKind::parse, std::string(source) + ": " + e.what());
    }
  }
  std::size_t yi = 0;
  try {
    yi = table.column_index(y_col);
  } catch (const Error& e) {
    fail(ErrorKind::parse, std::string(source) + ": " + e.what());
  }
  if (table.rows.empty()) {
    fail(ErrorKind::parse, std::string(source) + ": no data rows");
  }

  auto number = [&](std::size_t r, std::size_t c) {
    const std::string& cell = table.rows[r][c];
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (first != last && *first == '+') {
      ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
      fail(ErrorKind::parse, fmt::format("{}: line {}, column '{}': cannot parse '{}' as a number",
                                         source, table.line_numbers[r], table.columns[c], cell));
    }
    if (!std::isfinite(v)) {
      fail(ErrorKind::parse, fmt::format("{}: line {}, column '{}': non-finite value '{}'", source,
                                         table.line_numbers[r], table.columns[c], cell));
    }
    return v;
  };

  smoothing::Dataset data{ geometry::PointSet(xi.size()), {}, std::nullopt };
  data.xs.reserve(table.rows.size());
  std::vector<double> x(xi.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t k = 0; k < xi.size(); ++k) {
      x[k] = number(r, xi[k]);
    }
    data.xs.push_back(x);
    data.ys.push_back(number(r, yi));
  }
  return data;
}

smoothing::Dataset read_csv(const std::filesystem::path& path, std::span<const std::string> x_cols,
                            const std::string& y_col)
{
  const std::string text = read_file(path);
  return dataset_from_csv(parse_csv(text, path.string()), x_cols, y_col, path.string());
}

std::string format_double(double v)
{
  return fmt::format("{:.17g}", v);
}

std::string format_csv(std::span<const std::string> header,
                       std::span<const std::vector<double>> columns,
                       std::span<const std::string> comments)
{
  if (header.size() != columns.size()) {
    fail(ErrorKind::invalid_input, "CSV header and column count differ");
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) {
      fail(ErrorKind::invalid_input, "CSV columns have different lengths");
    }
  }
  std::string out;
  for (const auto& c : comments) {
    out += "# " + c + "\n";
  }
  for (std::size_t k = 0; k < header.size(); ++k) {
    out += (k ? "," : "") + header[k];
  }
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k) {
        out += ',';
      }
      out += format_double(columns[k][r]);
    }
    out += '\n';
  }
  return out;
}

} // namespace convexreg::io
