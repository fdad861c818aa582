#include "stb/parallel.hpp"

#include <cstdlib>
#include <string>

namespace stb {

unsigned thread_count_from_env() {
  const char* raw = std::getenv("STB_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const unsigned long value = std::strtoul(raw, &end, 10);
  if (*end != '\0') return 0;
  return static_cast<unsigned>(value);
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace stb
