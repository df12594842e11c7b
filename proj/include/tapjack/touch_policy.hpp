#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace tapjack {

// Victim-side mitigations applied when a touch reaches the victim window.
struct DefaultPolicy {
  bool operator==(const DefaultPolicy&) const = default;
};

// Drop every touch whose obscured flag is set.
struct FilterWhenObscured {
  bool operator==(const FilterWhenObscured&) const = default;
};

// Accept a touch only if the touched point was unobscured at some instant
// within the last `window_ms` milliseconds (inclusive).
struct RecentFocusFilter {
  std::int64_t window_ms = 5000;
  bool operator==(const RecentFocusFilter&) const = default;
};

using TouchPolicy = std::variant<DefaultPolicy, FilterWhenObscured, RecentFocusFilter>;

void check_policy(const TouchPolicy& policy);

// "Default", "FilterWhenObscured" or "RecentFocusFilter(5000)".
std::string to_string(const TouchPolicy& policy);

inline bool is_default(const TouchPolicy& policy) {
  return std::holds_alternative<DefaultPolicy>(policy);
}

}  // namespace tapjack
