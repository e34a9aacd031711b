#include "hecke/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hecke {

unsigned worker_count() {
  static const unsigned count = [] {
    if (const char* env = std::getenv("HECKE_THREADS")) {
      const int n = std::atoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  }();
  return count;
}

}  // namespace hecke
