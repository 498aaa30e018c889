#include "polytail/parallel.hpp"

#include <cstdlib>

namespace polytail {
namespace {
int g_threads = 0;
}

void set_threads(int n) { g_threads = n; }

int effective_threads() {
  if (g_threads > 0) return g_threads;
  if (const char* env = std::getenv("POLYTAIL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

}  // namespace polytail
