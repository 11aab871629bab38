#include "tensorinv/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace tensorinv {

unsigned thread_count() {
  if (const char* env = std::getenv("TENSORINV_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return unsigned(n);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace tensorinv
