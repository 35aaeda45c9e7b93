#include "convexreg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace convexreg {

namespace {

std::atomic<int> override_threads{ 0 };

int env_threads()
{
  const char* value = std::getenv("CONVEXREG_THREADS");
  if (value == nullptr) {
    return 0;
  }
  try {
    return std::max(0, std::stoi(value));
  } catch (...) {
    return 0;
  }
}

} // namespace

int thread_limit()
{
  int limit = omp_get_max_threads();
  if (const int forced = override_threads.load(); forced > 0) {
    return forced;
  }
  if (const int cap = env_threads(); cap > 0) {
    limit = std::min(limit, cap);
  }
  return std::max(1, limit);
}

void set_thread_limit(int threads)
{
  override_threads.store(std::max(0, threads));
}

} // namespace convexreg
