#include "convexreg/io/manifest.hpp"

#include <array>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "convexreg/error.hpp"
#include "convexreg/io/atomic_write.hpp"

#ifndef CONVEXREG_VERSION
#define CONVEXREG_VERSION "unknown"
#endif

namespace convexreg::io {

std::string_view version()
{
  return CONVEXREG_VERSION;
}

std::string sha256_hex(std::string_view data)
{
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::io, "SHA-256 computation failed");
  }
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += fmt::format("{:02x}", digest[i]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path)
{
  return sha256_hex(read_file(path));
}

std::string manifest_to_json(const RunManifest& m)
{
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["args"] = m.args;
  j["config"] = m.config;
  j["seed"] = m.seed ? nlohmann::ordered_json(*m.seed) : nlohmann::ordered_json(nullptr);
  j["input"] = { { "path", m.input_path }, { "sha256", m.input_sha256 } };
  auto outputs = nlohmann::ordered_json::array();
  for (const auto& o : m.outputs) {
    outputs.push_back({ { "path", o.path }, { "sha256", o.sha256 } });
  }
  j["outputs"] = outputs;
  j["timings"] = m.timings;
  j["version"] = m.version;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text)
{
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.args = j.at("args").get<std::vector<std::string>>();
    m.config = j.value("config", nlohmann::ordered_json::object());
    if (j.contains("seed") && !j.at("seed").is_null()) {
      m.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("input")) {
      m.input_path = j.at("input").value("path", "");
      m.input_sha256 = j.at("input").value("sha256", "");
    }
    for (const auto& o : j.value("outputs", nlohmann::ordered_json::array())) {
      m.outputs.push_back({ o.at("path").get<std::string>(), o.at("sha256").get<std::string>() });
    }
    m.timings = j.value("timings", nlohmann::ordered_json::object());
    m.version = j.value("version", "");
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("manifest JSON: ") + e.what());
  }
}

OutputRecord record_output(const std::filesystem::path& root, const std::filesystem::path& file)
{
  return { std::filesystem::relative(file, root).generic_string(), sha256_file(file) };
}

} // namespace convexreg::io
