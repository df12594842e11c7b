#include "tapjack/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "tapjack/analysis.hpp"
#include "tapjack/errors.hpp"

namespace tapjack {

namespace permissions {

bool is_enabler(std::string_view name) {
  return std::find(kEnablers.begin(), kEnablers.end(), name) != kEnablers.end();
}

bool is_privacy(std::string_view name) {
  return std::find(kPrivacy.begin(), kPrivacy.end(), name) != kPrivacy.end();
}

}  // namespace permissions

std::string_view to_string(UrlScheme scheme) {
  switch (scheme) {
    case UrlScheme::Market: return "market";
    case UrlScheme::Http: return "http";
    case UrlScheme::Https: return "https";
    case UrlScheme::Tel: return "tel";
  }
  return "?";
}

std::optional<UrlScheme> parse_url_scheme(std::string_view text) {
  for (auto s : {UrlScheme::Market, UrlScheme::Http, UrlScheme::Https, UrlScheme::Tel}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Low: return "Low";
    case Level::Medium: return "Medium";
    case Level::High: return "High";
  }
  return "?";
}

RiskSummary payload_risk(const Payload& payload) {
  struct Visitor {
    RiskSummary operator()(const InstallerPayload& installer) const {
      RiskSummary risk;
      for (const auto& name : installer.permissions) {
        if (!permissions::is_known(name)) {
          throw InputError("unknown permission '" + name + "'");
        }
        if (permissions::is_privacy(name)) risk.privacy_permissions.push_back(name);
      }
      risk.impact = risk.privacy_permissions.empty() ? Level::Medium : Level::High;
      return risk;
    }
    RiskSummary operator()(const UrlOpenPayload& url) const {
      switch (url.scheme) {
        case UrlScheme::Market: return {{}, Level::High};
        case UrlScheme::Http:
        case UrlScheme::Https: return {{}, Level::Medium};
        case UrlScheme::Tel: return {{}, Level::Low};
      }
      return {};
    }
    RiskSummary operator()(const LaunchIntentPayload&) const { return {{}, Level::Medium}; }
  };
  return std::visit(Visitor{}, payload);
}

void check_user(const UserModel& user) {
  if (!(user.sigma_dp >= 0.0) || !std::isfinite(user.sigma_dp)) {
    throw InputError("user sigma_dp must be >= 0");
  }
  if (user.taps_per_step < 1) throw InputError("user taps_per_step must be >= 1");
  if (user.inter_tap_ms <= 0) throw InputError("user inter_tap_ms must be > 0");
  if (user.start_delay_ms < 0) throw InputError("user start_delay_ms must be >= 0");
}

WindowStack AttackScript::stack_for_step(std::size_t step) const {
  return WindowStack{device, screens.at(step), overlay, policy};
}

void check_structure(const AttackScript& script) {
  check_device(script.device);
  if (script.screens.empty()) throw InputError("script must have at least one screen");
  for (const auto& screen : script.screens) check_screen(screen);
  check_overlay(script.overlay, script.screens.size());
  check_policy(script.policy);
  check_user(script.user);
  if (const auto* installer = std::get_if<InstallerPayload>(&script.payload)) {
    for (const auto& name : installer->permissions) {
      if (!permissions::is_known(name)) {
        throw InputError("installer payload requests unknown permission '" + name + "'");
      }
    }
  }
}

std::string to_string(const AttackStatus& status) {
  struct Visitor {
    std::string operator()(const Running&) const { return "Running"; }
    std::string operator()(const Success&) const { return "Success"; }
    std::string operator()(const Failed& f) const {
      if (const auto* d = std::get_if<Diverted>(&f.reason)) return "Failed(Diverted " + d->target + ")";
      if (std::holds_alternative<AllTapsFiltered>(f.reason)) return "Failed(AllTapsFiltered)";
      return "Failed(ExhaustedTaps)";
    }
  };
  return std::visit(Visitor{}, status);
}

namespace {

ScriptState consume_attempt(const AttackScript& script, ScriptState state, bool filtered) {
  ++state.attempts_on_step;
  if (filtered) ++state.filtered_on_step;
  if (state.attempts_on_step >= script.user.taps_per_step) {
    if (state.filtered_on_step == state.attempts_on_step) {
      state.status = Failed{AllTapsFiltered{}};
    } else {
      state.status = Failed{ExhaustedTaps{}};
    }
  }
  return state;
}

}  // namespace

ScriptState advance(const AttackScript& script, ScriptState state, const DispatchOutcome& outcome) {
  if (state.terminal()) return state;

  const auto* delivered = std::get_if<Delivered>(&outcome);
  if (delivered == nullptr) return consume_attempt(script, state, /*filtered=*/true);

  if (delivered->target_name) {
    const auto* target = script.screens.at(state.step).find_target(*delivered->target_name);
    if (target != nullptr && target->action == TargetAction::Advance) {
      ++state.step;
      state.attempts_on_step = 0;
      state.filtered_on_step = 0;
      if (state.step == script.screens.size()) state.status = Success{};
      return state;
    }
    if (target != nullptr && target->action == TargetAction::Divert) {
      state.status = Failed{Diverted{target->name}};
      return state;
    }
  }
  return consume_attempt(script, state, /*filtered=*/false);
}

ScriptState advance_off_screen(const AttackScript& script, ScriptState state) {
  if (state.terminal()) return state;
  return consume_attempt(script, state, /*filtered=*/false);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Plays one trial. The script must already be checked.
SimOutcome play(const AttackScript& script, const std::vector<WindowStack>& stacks,
                std::uint64_t seed, bool keep_log) {
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> noise(0.0, 1.0);

  const auto& user = script.user;
  ScriptState state;
  SimOutcome result;
  std::int64_t tap_index = 0;
  while (!state.terminal()) {
    const auto& stack = stacks[state.step];
    const auto& aim = script.overlay.panel_for_step(static_cast<int>(state.step)).aim_point;
    const double dx = user.sigma_dp * noise(rng);
    const double dy = user.sigma_dp * noise(rng);
    const DpPoint intended{aim.x + dx, aim.y + dy};
    const TouchEvent event{dp_to_px(intended, script.device),
                           user.start_delay_ms + tap_index * user.inter_tap_ms};

    std::optional<DispatchOutcome> outcome;
    if (in_bounds(event.point_px, script.device)) {
      outcome = dispatch(stack, event);
      state = advance(script, state, *outcome);
    } else {
      state = advance_off_screen(script, state);
    }
    if (keep_log) result.tap_log.push_back({event, intended, std::move(outcome)});
    ++tap_index;
  }
  result.status = state.status;
  result.steps_completed = state.step;
  return result;
}

std::vector<WindowStack> checked_stacks(const AttackScript& script) {
  check_structure(script);
  for (const auto& v : validate_layout(script)) {
    if (v.severity == Severity::Error) {
      throw InputError("layout error (" + std::string(to_string(v.kind)) + "): " + v.detail);
    }
  }
  std::vector<WindowStack> stacks;
  stacks.reserve(script.screens.size());
  for (std::size_t i = 0; i < script.screens.size(); ++i) stacks.push_back(script.stack_for_step(i));
  return stacks;
}

}  // namespace

SimOutcome simulate(const AttackScript& script, std::uint64_t seed) {
  return play(script, checked_stacks(script), seed, /*keep_log=*/true);
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t n) {
  if (n <= 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The bounds are exactly 0 and 1 at the extremes; avoid rounding residue.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
  return splitmix64(seed ^ splitmix64(trial_index));
}

SuccessEstimate run_trials(const AttackScript& script, std::int64_t n, std::uint64_t seed,
                           unsigned threads) {
  if (n < 1) throw InputError("number of trials must be >= 1");
  const auto stacks = checked_stacks(script);
  const std::size_t steps = script.step_count();

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, n));

  // Each worker owns a contiguous block of trial indices and its own counters;
  // the sums are independent of how the blocks are scheduled.
  std::vector<std::vector<std::int64_t>> reached(threads, std::vector<std::int64_t>(steps, 0));
  auto work = [&](unsigned worker) {
    const std::int64_t begin = n * worker / threads;
    const std::int64_t end = n * (worker + 1) / threads;
    for (std::int64_t i = begin; i < end; ++i) {
      const auto outcome =
          play(script, stacks, trial_seed(seed, static_cast<std::uint64_t>(i)), false);
      for (std::size_t s = 0; s < outcome.steps_completed; ++s) ++reached[worker][s];
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
    work(0);
  }

  SuccessEstimate est;
  est.n = n;
  est.reached.assign(steps, 0);
  for (const auto& counts : reached) {
    for (std::size_t s = 0; s < steps; ++s) est.reached[s] += counts[s];
  }
  est.successes = est.reached.back();
  est.p_hat = static_cast<double>(est.successes) / static_cast<double>(n);
  est.ci95 = wilson_interval(est.successes, n);
  return est;
}

}  // namespace tapjack
