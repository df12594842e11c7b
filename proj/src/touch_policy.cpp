#include "tapjack/touch_policy.hpp"

#include "tapjack/errors.hpp"

namespace tapjack {

void check_policy(const TouchPolicy& policy) {
  if (const auto* recent = std::get_if<RecentFocusFilter>(&policy)) {
    if (recent->window_ms <= 0) throw InputError("RecentFocusFilter window_ms must be > 0");
  }
}

std::string to_string(const TouchPolicy& policy) {
  struct Visitor {
    std::string operator()(const DefaultPolicy&) const { return "Default"; }
    std::string operator()(const FilterWhenObscured&) const { return "FilterWhenObscured"; }
    std::string operator()(const RecentFocusFilter& r) const {
      return "RecentFocusFilter(" + std::to_string(r.window_ms) + ")";
    }
  };
  return std::visit(Visitor{}, policy);
}

}  // namespace tapjack
