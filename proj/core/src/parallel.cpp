// SPDX-License-Identifier: Apache-2.0
#include "beamdt/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace beamdt {

namespace {

std::atomic<int> g_thread_override{0};

int default_threads() {
  if (const char* env = std::getenv("BEAMDT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void set_thread_count(int n) { g_thread_override.store(n > 0 ? n : 0); }

int thread_count() {
  const int n = g_thread_override.load();
  return n > 0 ? n : default_threads();
}

}  // namespace beamdt
