#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace convexreg::io {

// Writes to a temporary file next to `path` and renames it into place, so
// readers never see a partial file. Parent directories are created.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

} // namespace convexreg::io
