#include "tapjack/windowing.hpp"

#include <algorithm>
#include <stdexcept>

#include "tapjack/errors.hpp"

namespace tapjack {

std::string_view to_string(TargetAction action) {
  switch (action) {
    case TargetAction::Advance: return "Advance";
    case TargetAction::Divert: return "Divert";
    case TargetAction::Inert: return "Inert";
  }
  return "?";
}

const TapTarget& Screen::advance_target() const {
  auto it = std::find_if(targets.begin(), targets.end(),
                         [](const TapTarget& t) { return t.action == TargetAction::Advance; });
  if (it == targets.end()) {
    throw InputError("screen '" + name + "' has no Advance target");
  }
  return *it;
}

const TapTarget* Screen::find_target(std::string_view target_name) const {
  for (const auto& t : targets) {
    if (t.name == target_name) return &t;
  }
  return nullptr;
}

void check_screen(const Screen& screen) {
  const auto advance_count =
      std::count_if(screen.targets.begin(), screen.targets.end(),
                    [](const TapTarget& t) { return t.action == TargetAction::Advance; });
  if (advance_count != 1) {
    throw InputError("screen '" + screen.name + "' must have exactly one Advance target, found " +
                     std::to_string(advance_count));
  }
  for (std::size_t i = 0; i < screen.targets.size(); ++i) {
    const auto& t = screen.targets[i];
    if (t.rect.w < 0.0 || t.rect.h < 0.0) {
      throw InputError("target '" + t.name + "' on screen '" + screen.name +
                       "' has a negative width or height");
    }
    if (t.action != TargetAction::Inert && t.rect.empty()) {
      throw InputError("target '" + t.name + "' on screen '" + screen.name +
                       "' is " + std::string(to_string(t.action)) + " but has an empty rect");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (screen.targets[j].name == t.name) {
        throw InputError("screen '" + screen.name + "' has duplicate target name '" + t.name + "'");
      }
      if (intersects(screen.targets[j].rect, t.rect)) {
        throw InputError("targets '" + screen.targets[j].name + "' and '" + t.name +
                         "' on screen '" + screen.name + "' overlap");
      }
    }
  }
}

void check_schedule(const ToastSchedule& schedule) {
  if (schedule.start_ms < 0) throw InputError("schedule start_ms must be >= 0");
  if (schedule.duration_ms <= 0) throw InputError("schedule duration_ms must be > 0");
  if (schedule.gap_ms < 0) throw InputError("schedule gap_ms must be >= 0");
}

const BaitPanel& OverlaySpec::panel_for_step(int step) const {
  for (const auto& p : panels) {
    if (p.step_index == step) return p;
  }
  throw std::out_of_range("no bait panel for step " + std::to_string(step));
}

void check_overlay(const OverlaySpec& overlay, std::size_t step_count) {
  check_schedule(overlay.schedule);
  if (overlay.panels.size() != step_count) {
    throw InputError("overlay must have exactly one bait panel per screen: " +
                     std::to_string(overlay.panels.size()) + " panels for " +
                     std::to_string(step_count) + " screens");
  }
  std::vector<bool> seen(step_count, false);
  for (const auto& p : overlay.panels) {
    if (p.step_index < 0 || static_cast<std::size_t>(p.step_index) >= step_count) {
      throw InputError("bait panel step " + std::to_string(p.step_index) + " is out of range");
    }
    if (seen[p.step_index]) {
      throw InputError("duplicate bait panel for step " + std::to_string(p.step_index));
    }
    seen[p.step_index] = true;
    if (p.visual_rect.w < 0.0 || p.visual_rect.h < 0.0) {
      throw InputError("bait panel " + std::to_string(p.step_index) +
                       " has a negative width or height");
    }
    if (!contains(p.visual_rect, p.aim_point)) {
      throw InputError("bait panel " + std::to_string(p.step_index) +
                       ": aim_point lies outside visual_rect");
    }
  }
}

bool overlay_visible(const ToastSchedule& schedule, std::int64_t t_ms) {
  if (t_ms < schedule.start_ms) return false;
  if (schedule.gap_ms == 0) return true;
  return (t_ms - schedule.start_ms) % schedule.period_ms() < schedule.duration_ms;
}

bool overlay_covers(const WindowStack& stack, PxPoint p) {
  if (stack.overlay.opaque_background) return true;
  return std::any_of(stack.overlay.panels.begin(), stack.overlay.panels.end(),
                     [&](const BaitPanel& panel) {
                       return contains(rect_to_px(panel.visual_rect, stack.device), p);
                     });
}

bool is_point_obscured(const WindowStack& stack, PxPoint p, std::int64_t t_ms) {
  return overlay_visible(stack.overlay.schedule, t_ms) && overlay_covers(stack, p);
}

std::optional<std::int64_t> last_unobscured_at(const WindowStack& stack, PxPoint p,
                                               std::int64_t t_ms) {
  const auto& s = stack.overlay.schedule;
  if (!overlay_covers(stack, p) || !overlay_visible(s, t_ms)) return t_ms;

  // t_ms is inside a display interval. The latest clear instant is the end of
  // the preceding gap, or the instant before the first launch.
  if (s.gap_ms > 0) {
    const std::int64_t cycle = (t_ms - s.start_ms) / s.period_ms();
    if (cycle > 0) return s.start_ms + cycle * s.period_ms() - 1;
  }
  if (s.start_ms > 0) return s.start_ms - 1;
  return std::nullopt;
}

}  // namespace tapjack
