#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convexreg/smoothing/dataset.hpp"

namespace convexreg::io {

// Comma-separated text with a header row. Blank lines and lines starting
// with '#' are skipped. Errors name the line and column.
struct CsvTable
{
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers; // 1-based source line of each row

  std::size_t column_index(std::string_view name) const; // throws parse
};

CsvTable parse_csv(std::string_view text, std::string_view source = "<input>");

// Selected columns as a dataset; the domain is left empty so it defaults to
// the bounding box. Cells must be finite numbers.
smoothing::Dataset dataset_from_csv(const CsvTable& table, std::span<const std::string> x_cols,
                                    const std::string& y_col, std::string_view source = "<input>");

smoothing::Dataset read_csv(const std::filesystem::path& path, std::span<const std::string> x_cols,
                            const std::string& y_col);

// Shortest text that reads back to the same double.
std::string format_double(double v);

// Header plus one row per index; every column must have the same length.
std::string format_csv(std::span<const std::string> header,
                       std::span<const std::vector<double>> columns,
                       std::span<const std::string> comments = {});

} // namespace convexreg::io
