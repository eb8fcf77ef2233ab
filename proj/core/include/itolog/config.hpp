#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itolog {

/// Raised when an operation would produce terms beyond the configured
/// weight or grade cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultWeightCap = 8;
inline constexpr std::size_t kDefaultGradeCap = 6;

// Process-wide caps. Reads and writes are atomic; the values guard term
// explosion and are not part of any operation's result.
std::size_t weight_cap();
void set_weight_cap(std::size_t cap);
std::size_t grade_cap();
void set_grade_cap(std::size_t cap);

/// Throws CapExceeded when `value > cap`.
void check_cap(std::size_t value, std::size_t cap, const std::string& what);

/// Restores both caps on scope exit.
class ScopedCaps {
 public:
  ScopedCaps(std::size_t weight, std::size_t grade);
  ~ScopedCaps();
  ScopedCaps(const ScopedCaps&) = delete;
  ScopedCaps& operator=(const ScopedCaps&) = delete;

 private:
  std::size_t saved_weight_;
  std::size_t saved_grade_;
};

}  // namespace itolog
