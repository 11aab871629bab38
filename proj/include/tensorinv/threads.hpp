#pragma once

#include <future>
#include <utility>

namespace tensorinv {

/// Worker count from TENSORINV_THREADS, else the hardware concurrency.
unsigned thread_count();

/// Runs `f` on its own thread when more than one worker is allowed,
/// otherwise lazily on the calling thread at get().
template <class F>
auto run_task(F&& f) {
  return std::async(thread_count() > 1 ? std::launch::async : std::launch::deferred,
                    std::forward<F>(f));
}

}  // namespace tensorinv
