#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "convexreg/geometry/envelope.hpp"

namespace convexreg::io {

// {"dim": d, "pieces": [{"a": [...], "b": ...}], "domain": {"vertices": [...]},
//  "shape": "convex"|"concave"} with 17 significant digits. Concave envelopes
// keep the pieces of the negated convex problem.
std::string envelope_to_json(const geometry::ConvexEnvelope& envelope);

// Throws parse on malformed input. Axis-aligned boxes written in corner
// order come back as box domains.
geometry::ConvexEnvelope envelope_from_json(std::string_view text);

void write_envelope(const std::filesystem::path& path, const geometry::ConvexEnvelope& envelope);
geometry::ConvexEnvelope read_envelope(const std::filesystem::path& path);

} // namespace convexreg::io
