#include "triwave/parallel.hpp"

#include <cstdlib>
#include <string>

namespace triwave {

std::size_t worker_cap() {
  if (const char* env = std::getenv("TRIWAVE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace triwave
