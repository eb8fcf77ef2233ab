#include "itolog/config.hpp"

#include <atomic>

namespace itolog {
namespace {
std::atomic<std::size_t> g_weight_cap{kDefaultWeightCap};
std::atomic<std::size_t> g_grade_cap{kDefaultGradeCap};
}  // namespace

std::size_t weight_cap() { return g_weight_cap.load(std::memory_order_relaxed); }
void set_weight_cap(std::size_t cap) { g_weight_cap.store(cap, std::memory_order_relaxed); }
std::size_t grade_cap() { return g_grade_cap.load(std::memory_order_relaxed); }
void set_grade_cap(std::size_t cap) { g_grade_cap.store(cap, std::memory_order_relaxed); }

void check_cap(std::size_t value, std::size_t cap, const std::string& what) {
  if (value > cap) {
    throw CapExceeded(what + " " + std::to_string(value) + " exceeds cap " + std::to_string(cap));
  }
}

ScopedCaps::ScopedCaps(std::size_t weight, std::size_t grade)
    : saved_weight_(weight_cap()), saved_grade_(grade_cap()) {
  set_weight_cap(weight);
  set_grade_cap(grade);
}

ScopedCaps::~ScopedCaps() {
  set_weight_cap(saved_weight_);
  set_grade_cap(saved_grade_);
}

}  // namespace itolog
