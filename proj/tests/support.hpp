#pragma once

// Fixture access and reference oracles shared by the unit and acceptance
// suites. The oracles deliberately avoid the library's closed forms.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tapjack/documents.hpp"
#include "tapjack/geometry.hpp"
#include "tapjack/scenario.hpp"
#include "tapjack/windowing.hpp"

namespace tapjack::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(TAPJACK_FIXTURE_DIR) + "/" + name + ".json";
}

inline AttackScript fixture(const std::string& name) { return load_scenario(fixture_path(name)); }

// Toast visibility at every integer ms in [0, horizon), produced by walking the
// show/hide cycle forward in time.
inline std::vector<bool> toast_timeline(const ToastSchedule& s, std::int64_t horizon) {
  std::vector<bool> shown(static_cast<std::size_t>(horizon), false);
  std::int64_t t = s.start_ms;
  while (t < horizon) {
    for (std::int64_t i = 0; i < s.duration_ms && t < horizon; ++i, ++t) shown[t] = true;
    t += s.gap_ms;
  }
  return shown;
}

// Latest clear instant found by scanning backwards one millisecond at a time.
inline std::optional<std::int64_t> scan_last_unobscured(const WindowStack& stack, PxPoint p,
                                                        std::int64_t t_ms) {
  for (std::int64_t t = t_ms; t >= 0; --t) {
    if (!is_point_obscured(stack, p, t)) return t;
  }
  return std::nullopt;
}

// Fraction of Gaussian taps around `aim` landing in `target`.
inline double sampled_hit_probability(const DpRect& target, DpPoint aim, double sigma,
                                      std::int64_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const DpPoint p{aim.x + noise(rng), aim.y + noise(rng)};
    if (contains(target, p)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace tapjack::testing
