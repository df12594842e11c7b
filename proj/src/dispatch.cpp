#include "tapjack/dispatch.hpp"

#include "tapjack/errors.hpp"

namespace tapjack {

namespace {

Delivered deliver(const WindowStack& stack, const TouchEvent& event, bool obscured) {
  Delivered out{std::nullopt, obscured};
  for (const auto& target : stack.current_screen.targets) {
    if (contains(rect_to_px(target.rect, stack.device), event.point_px)) {
      out.target_name = target.name;
      break;
    }
  }
  return out;
}

}  // namespace

DispatchOutcome dispatch(const WindowStack& stack, const TouchEvent& event) {
  if (!in_bounds(event.point_px, stack.device)) {
    throw InputError("touch at px (" + std::to_string(event.point_px.x) + ", " +
                     std::to_string(event.point_px.y) + ") is outside the " +
                     std::to_string(stack.device.width_px) + "x" +
                     std::to_string(stack.device.height_px) + " screen");
  }
  if (event.t_ms < 0) throw InputError("touch time must be >= 0");

  const bool obscured = is_point_obscured(stack, event.point_px, event.t_ms);

  struct Visitor {
    const WindowStack& stack;
    const TouchEvent& event;
    bool obscured;

    DispatchOutcome operator()(const DefaultPolicy&) const {
      return deliver(stack, event, obscured);
    }
    DispatchOutcome operator()(const FilterWhenObscured&) const {
      if (obscured) return FilteredObscured{};
      return deliver(stack, event, obscured);
    }
    DispatchOutcome operator()(const RecentFocusFilter& recent) const {
      const auto clear_at = last_unobscured_at(stack, event.point_px, event.t_ms);
      if (!clear_at || *clear_at < event.t_ms - recent.window_ms) return FilteredObscured{};
      return deliver(stack, event, obscured);
    }
  };
  return std::visit(Visitor{stack, event, obscured}, stack.policy);
}

std::string to_string(const DispatchOutcome& outcome) {
  if (const auto* d = std::get_if<Delivered>(&outcome)) {
    return "Delivered " + d->target_name.value_or("<none>") +
           (d->obscured ? " obscured=true" : " obscured=false");
  }
  return "FilteredObscured";
}

}  // namespace tapjack
