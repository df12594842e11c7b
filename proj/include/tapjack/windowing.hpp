#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tapjack/geometry.hpp"
#include "tapjack/touch_policy.hpp"

namespace tapjack {

enum class TargetAction { Advance, Divert, Inert };

std::string_view to_string(TargetAction action);

struct TapTarget {
  std::string name;
  DpRect rect;
  TargetAction action = TargetAction::Inert;

  bool operator==(const TapTarget&) const = default;
};

struct Screen {
  std::string name;
  std::vector<TapTarget> targets;

  // The single target that moves the flow to the next screen.
  const TapTarget& advance_target() const;
  const TapTarget* find_target(std::string_view target_name) const;

  bool operator==(const Screen&) const = default;
};

// Exactly one Advance target, non-empty Advance/Divert rects and pairwise
// disjoint targets. Device bounds are left to the layout validator.
void check_screen(const Screen& screen);

struct BaitPanel {
  int step_index = 0;
  DpRect visual_rect;
  DpPoint aim_point;

  bool operator==(const BaitPanel&) const = default;
};

// The toast is shown for `duration_ms`, hidden for `gap_ms`, and relaunched,
// starting at `start_ms`.
struct ToastSchedule {
  std::int64_t start_ms = 0;
  std::int64_t duration_ms = 3500;
  std::int64_t gap_ms = 500;

  std::int64_t period_ms() const { return duration_ms + gap_ms; }

  bool operator==(const ToastSchedule&) const = default;
};

void check_schedule(const ToastSchedule& schedule);

struct OverlaySpec {
  std::vector<BaitPanel> panels;
  bool opaque_background = true;
  ToastSchedule schedule;

  // Throws std::out_of_range if no panel has this step index.
  const BaitPanel& panel_for_step(int step) const;

  bool operator==(const OverlaySpec&) const = default;
};

// One panel per step for `step_count` steps, step indices 0..step_count-1, and
// every aim point inside its panel.
void check_overlay(const OverlaySpec& overlay, std::size_t step_count);

// Victim screen underneath, non-touchable toast on top.
struct WindowStack {
  DeviceProfile device;
  Screen current_screen;
  OverlaySpec overlay;
  TouchPolicy policy;
};

bool overlay_visible(const ToastSchedule& schedule, std::int64_t t_ms);

// Whether the overlay, while shown, covers this point. Time independent.
bool overlay_covers(const WindowStack& stack, PxPoint p);

bool is_point_obscured(const WindowStack& stack, PxPoint p, std::int64_t t_ms);

// Greatest t' <= t_ms at which `p` is not obscured, or nullopt when the point
// has been covered continuously since time zero.
std::optional<std::int64_t> last_unobscured_at(const WindowStack& stack, PxPoint p,
                                               std::int64_t t_ms);

}  // namespace tapjack
