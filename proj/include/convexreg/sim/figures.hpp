#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "convexreg/geometry/domain.hpp"
#include "convexreg/sim/simulation.hpp"

namespace convexreg::sim {

// regression1d, varbiasmse1d, confidence, regression2d, varbiasmse2d
std::vector<std::string> study_ids();

struct FigureOptions
{
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  // Overrides the study's run or replication count.
  std::optional<std::size_t> replications;
  // Domain of the 2-d studies; defaults to f2d's own box, [-1,1]^2.
  std::optional<geometry::PolyhedralDomain> domain2d;
  // Recorded in the manifest so the run can be replayed.
  std::string command = "simulate";
  std::vector<std::string> args;
};

struct FigureResult
{
  std::string study;
  std::vector<std::filesystem::path> files; // CSV outputs
  std::filesystem::path manifest;
};

nlohmann::ordered_json spec_to_json(const SimSpec& spec);

// Writes <out>/<study>/<function>/<artifact>.csv and <out>/<study>/manifest.json.
// Unknown ids are a usage error.
FigureResult reproduce_figure(std::string_view study, const FigureOptions& options);

} // namespace convexreg::sim
