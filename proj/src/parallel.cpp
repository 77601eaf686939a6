#include "hyperlat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hyperlat {

std::size_t worker_count() {
  if (const char* env = std::getenv("HYPERLAT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace hyperlat
