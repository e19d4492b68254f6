#include "lieform/base.hpp"

#include <atomic>

namespace lieform {

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_enabled(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw UsageError("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

}  // namespace lieform
