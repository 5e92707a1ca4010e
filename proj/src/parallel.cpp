#include "sama/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace sama {

int worker_count() noexcept {
  if (const char* env = std::getenv("SAMA_THREADS"); env != nullptr && *env != '\0') {
    int value = 0;
    const auto* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value >= 1) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace sama
