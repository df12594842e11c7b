#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tapjack/dispatch.hpp"
#include "tapjack/geometry.hpp"
#include "tapjack/touch_policy.hpp"
#include "tapjack/windowing.hpp"

namespace tapjack {

// ---------------------------------------------------------------------------
// Payloads

namespace permissions {

// Requested by virtually every installed second-stage app.
inline constexpr std::array<std::string_view, 3> kEnablers = {
    "RECEIVE_BOOT_COMPLETED", "INTERNET", "ACCESS_NETWORK_STATE"};

// Each of these exposes user data on its own.
inline constexpr std::array<std::string_view, 8> kPrivacy = {
    "ACCESS_FINE_LOCATION", "CAMERA",        "RECORD_AUDIO", "READ_CALENDAR",
    "READ_CALL_LOG",        "READ_CONTACTS", "READ_SMS",     "READ_EXTERNAL_STORAGE"};

bool is_enabler(std::string_view name);
bool is_privacy(std::string_view name);
inline bool is_known(std::string_view name) { return is_enabler(name) || is_privacy(name); }

}  // namespace permissions

struct InstallerPayload {
  std::string package;
  std::vector<std::string> permissions;

  bool operator==(const InstallerPayload&) const = default;
};

enum class UrlScheme { Market, Http, Https, Tel };

std::string_view to_string(UrlScheme scheme);
std::optional<UrlScheme> parse_url_scheme(std::string_view text);

struct UrlOpenPayload {
  UrlScheme scheme = UrlScheme::Http;
  std::string value;

  bool operator==(const UrlOpenPayload&) const = default;
};

struct SystemSettingsIntent {
  bool operator==(const SystemSettingsIntent&) const = default;
};

struct ThirdPartyPackageIntent {
  std::string package;
  bool operator==(const ThirdPartyPackageIntent&) const = default;
};

struct LaunchIntentPayload {
  std::variant<SystemSettingsIntent, ThirdPartyPackageIntent> kind;

  bool operator==(const LaunchIntentPayload&) const = default;
};

using Payload = std::variant<InstallerPayload, UrlOpenPayload, LaunchIntentPayload>;

enum class Level { Low, Medium, High };

std::string_view to_string(Level level);

struct RiskSummary {
  std::vector<std::string> privacy_permissions;
  Level impact = Level::Low;

  bool operator==(const RiskSummary&) const = default;
};

// Throws InputError on a permission outside the catalog.
RiskSummary payload_risk(const Payload& payload);

// ---------------------------------------------------------------------------
// Attack description

struct Concealment {
  bool hide_launcher_icon = false;
  std::optional<std::string> generic_name;

  bool operator==(const Concealment&) const = default;
};

// A victim who taps at the bait with isotropic Gaussian error.
struct UserModel {
  double sigma_dp = 0.0;
  int taps_per_step = 1;
  std::int64_t inter_tap_ms = 1000;
  std::int64_t start_delay_ms = 0;

  bool operator==(const UserModel&) const = default;
};

void check_user(const UserModel& user);

struct AttackScript {
  DeviceProfile device;
  std::vector<Screen> screens;
  OverlaySpec overlay;
  Payload payload;
  TouchPolicy policy;
  UserModel user;
  Concealment concealment;

  std::size_t step_count() const { return screens.size(); }
  WindowStack stack_for_step(std::size_t step) const;

  bool operator==(const AttackScript&) const = default;
};

// Structural invariants of every component. Layout quality (overlap, bounds,
// aim) is the validator's job. Throws InputError naming the broken invariant.
void check_structure(const AttackScript& script);

// ---------------------------------------------------------------------------
// Attack state machine

struct Diverted {
  std::string target;
  bool operator==(const Diverted&) const = default;
};
struct ExhaustedTaps {
  bool operator==(const ExhaustedTaps&) const = default;
};
struct AllTapsFiltered {
  bool operator==(const AllTapsFiltered&) const = default;
};

using FailureReason = std::variant<Diverted, ExhaustedTaps, AllTapsFiltered>;

struct Running {
  bool operator==(const Running&) const = default;
};
struct Success {
  bool operator==(const Success&) const = default;
};
struct Failed {
  FailureReason reason;
  bool operator==(const Failed&) const = default;
};

using AttackStatus = std::variant<Running, Success, Failed>;

std::string to_string(const AttackStatus& status);

struct ScriptState {
  std::size_t step = 0;
  int attempts_on_step = 0;
  int filtered_on_step = 0;
  AttackStatus status = Running{};

  bool terminal() const { return !std::holds_alternative<Running>(status); }

  bool operator==(const ScriptState&) const = default;
};

// Feeds one tap result into the attack. A Delivered hit on the current
// screen's Advance target moves on, a Divert target ends the attack, and
// anything else consumes an attempt.
ScriptState advance(const AttackScript& script, ScriptState state, const DispatchOutcome& outcome);

// A tap that landed off the physical screen: no window received it, so it
// only consumes an attempt.
ScriptState advance_off_screen(const AttackScript& script, ScriptState state);

struct TapRecord {
  TouchEvent event;
  DpPoint intended_dp;                     // aim plus noise, before rounding
  std::optional<DispatchOutcome> outcome;  // nullopt: off screen

  bool operator==(const TapRecord&) const = default;
};

struct SimOutcome {
  AttackStatus status = Running{};
  std::size_t steps_completed = 0;
  std::vector<TapRecord> tap_log;

  bool succeeded() const { return std::holds_alternative<Success>(status); }

  bool operator==(const SimOutcome&) const = default;
};

// Plays the whole attack once. Deterministic in (script, seed). Throws
// InputError if the script is structurally broken or has layout errors.
SimOutcome simulate(const AttackScript& script, std::uint64_t seed);

struct SuccessEstimate {
  std::int64_t n = 0;
  std::int64_t successes = 0;
  double p_hat = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  // reached[i]: trials that completed at least i + 1 steps.
  std::vector<std::int64_t> reached;
};

// Wilson score interval at 95 %.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t n);

// Seed of the RNG stream used by trial `trial_index`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index);

// Runs `n` independent trials, each seeded by trial_seed(seed, i). The result
// does not depend on `threads`; 0 picks the hardware concurrency.
SuccessEstimate run_trials(const AttackScript& script, std::int64_t n, std::uint64_t seed,
                           unsigned threads = 0);

}  // namespace tapjack
