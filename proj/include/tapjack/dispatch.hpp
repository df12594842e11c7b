#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "tapjack/geometry.hpp"
#include "tapjack/touch_policy.hpp"
#include "tapjack/windowing.hpp"

namespace tapjack {

// One complete tap at a point on the physical screen.
struct TouchEvent {
  PxPoint point_px;
  std::int64_t t_ms = 0;

  bool operator==(const TouchEvent&) const = default;
};

struct Delivered {
  std::optional<std::string> target_name;  // nullopt: landed on no target
  bool obscured = false;

  bool operator==(const Delivered&) const = default;
};

struct FilteredObscured {
  bool operator==(const FilteredObscured&) const = default;
};

using DispatchOutcome = std::variant<Delivered, FilteredObscured>;

inline bool is_delivered(const DispatchOutcome& o) {
  return std::holds_alternative<Delivered>(o);
}

// Routes a touch through the toast (which never consumes it) to the victim
// screen and applies the victim's touch policy. Throws InputError when the
// event lies outside the device or before time zero.
DispatchOutcome dispatch(const WindowStack& stack, const TouchEvent& event);

// "Delivered install_button obscured=true", "Delivered <none> obscured=false"
// or "FilteredObscured".
std::string to_string(const DispatchOutcome& outcome);

}  // namespace tapjack
