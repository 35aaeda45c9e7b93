#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace convexreg::io {

// git-describe string of the build.
std::string_view version();

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

struct OutputRecord
{
  std::string path; // relative to the output directory
  std::string sha256;
};

// What a run needs to be repeated: the command with its arguments, the
// resolved configuration, the seed, the input digest and the outputs.
struct RunManifest
{
  std::string command;
  std::vector<std::string> args;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::string input_path;
  std::string input_sha256;
  std::vector<OutputRecord> outputs;
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
  std::string version{ io::version() };
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text); // throws parse

// Records path (relative to root) and digest of a written file.
OutputRecord record_output(const std::filesystem::path& root, const std::filesystem::path& file);

} // namespace convexreg::io
