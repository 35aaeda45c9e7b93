#include "convexreg/random.hpp"

namespace convexreg {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream)
{
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state ^= stream * 0xd1b54a32d192ed03ULL;
  const std::uint64_t b = splitmix64(state);
  std::seed_seq seq{ static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                     static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32) };
  return std::mt19937_64(seq);
}

} // namespace convexreg
