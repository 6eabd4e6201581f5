#include "latnab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace latnab {

namespace {
std::atomic<unsigned> configured{0};

unsigned from_environment() {
  if (const char* env = std::getenv("LATNAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}
}  // namespace

unsigned thread_count() {
  unsigned n = configured.load();
  return n ? n : from_environment();
}

void set_thread_count(unsigned n) { configured.store(n); }

}  // namespace latnab
