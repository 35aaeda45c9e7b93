#pragma once

#include <cstdint>
#include <random>

namespace convexreg {

// Independent, reproducible engine for replication `stream` under `seed`.
// Streams are derived by splitmix64 mixing so neighbouring indices do not
// produce correlated sequences.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream);

} // namespace convexreg
