#include "doctest.h"
#include "support.hpp"
#include "tapjack/analysis.hpp"
#include "tapjack/errors.hpp"
#include "tapjack/scenario.hpp"

using namespace tapjack;
using tapjack::testing::fixture;

TEST_CASE("advance moves through the flow") {
  const auto script = fixture("canonical-install");

  ScriptState s;
  s = advance(script, s, Delivered{"install_button", true});
  CHECK(s.step == 1);
  CHECK(s.attempts_on_step == 0);
  CHECK_FALSE(s.terminal());

  const auto diverted = advance(script, s, Delivered{"learn_more", true});
  CHECK(diverted.status == AttackStatus{Failed{Diverted{"learn_more"}}});

  const auto done = advance(script, s, Delivered{"accept_button", false});
  CHECK(done.status == AttackStatus{Success{}});
  CHECK(done.step == 2);

  // A target name from another screen does nothing special here.
  const auto miss = advance(script, s, Delivered{"install_button", true});
  CHECK(miss.step == 1);
  CHECK(miss.attempts_on_step == 1);
}

TEST_CASE("advance exhaustion rules") {
  auto script = fixture("canonical-install");
  script.user.taps_per_step = 1;
  CHECK(advance(script, {}, FilteredObscured{}).status == AttackStatus{Failed{AllTapsFiltered{}}});
  CHECK(advance(script, {}, Delivered{std::nullopt, true}).status == AttackStatus{Failed{ExhaustedTaps{}}});
  CHECK(advance(script, {}, Delivered{"app_header", true}).status == AttackStatus{Failed{ExhaustedTaps{}}});
  CHECK(advance_off_screen(script, {}).status == AttackStatus{Failed{ExhaustedTaps{}}});

  script.user.taps_per_step = 3;
  ScriptState s;
  s = advance(script, s, FilteredObscured{});
  s = advance(script, s, Delivered{std::nullopt, false});
  CHECK_FALSE(s.terminal());
  s = advance(script, s, FilteredObscured{});
  CHECK(s.status == AttackStatus{Failed{ExhaustedTaps{}}});

  ScriptState all_filtered;
  for (int i = 0; i < 3; ++i) all_filtered = advance(script, all_filtered, FilteredObscured{});
  CHECK(all_filtered.status == AttackStatus{Failed{AllTapsFiltered{}}});

  // Terminal states absorb further taps.
  CHECK(advance(script, all_filtered, Delivered{"install_button", false}) == all_filtered);
}

TEST_CASE("noiseless canonical attack succeeds in two taps") {
  const auto out = simulate(fixture("canonical-install"), 1);
  CHECK(out.status == AttackStatus{Success{}});
  CHECK(out.steps_completed == 2);
  REQUIRE(out.tap_log.size() == 2);
  CHECK(out.tap_log[0].outcome == std::optional<DispatchOutcome>{Delivered{"install_button", true}});
  CHECK(out.tap_log[1].outcome == std::optional<DispatchOutcome>{Delivered{"accept_button", true}});
  CHECK(out.tap_log[0].event.t_ms == 1000);
  CHECK(out.tap_log[1].event.t_ms == 1800);
}

TEST_CASE("declarative filter with a looping toast stops the attack") {
  const auto out = simulate(fixture("filtered-declarative"), 1);
  CHECK(out.status == AttackStatus{Failed{AllTapsFiltered{}}});
  CHECK(out.steps_completed == 0);
  CHECK(out.tap_log.size() == 3);
}

TEST_CASE("tap schedule and determinism") {
  auto script = fixture("canonical-install");
  script.user.sigma_dp = 40.0;
  script.user.taps_per_step = 4;
  script.user.inter_tap_ms = 333;
  script.user.start_delay_ms = 17;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = simulate(script, seed);
    const auto b = simulate(script, seed);
    REQUIRE(a == b);
    for (std::size_t i = 0; i < a.tap_log.size(); ++i) {
      REQUIRE(a.tap_log[i].event.t_ms == 17 + static_cast<std::int64_t>(i) * 333);
    }
    REQUIRE(a.succeeded() == (a.steps_completed == script.step_count()));
  }
}

TEST_CASE("simulate rejects invalid scripts") {
  auto overlap = fixture("overlap-violation");
  CHECK_THROWS_WITH_AS(simulate(overlap, 0), doctest::Contains("OverlapViolation"), InputError);

  auto bad_user = fixture("canonical-install");
  bad_user.user.taps_per_step = 0;
  CHECK_THROWS_WITH_AS(simulate(bad_user, 0), doctest::Contains("taps_per_step"), InputError);

  auto missing_panel = fixture("canonical-install");
  missing_panel.overlay.panels.pop_back();
  CHECK_THROWS_WITH_AS(simulate(missing_panel, 0), doctest::Contains("one bait panel per screen"),
                       InputError);
}

TEST_CASE("noiseless Default success iff every aim lies on its advance target") {
  for (const char* name : {"canonical-install", "tel-payload", "four-step-warning"}) {
    auto script = fixture(name);
    CHECK(simulate(script, 0).succeeded());
    CHECK(run_trials(script, 50, 3).p_hat == 1.0);
  }
}

TEST_CASE("run_trials basics") {
  CHECK(run_trials(fixture("canonical-install"), 1000, 42).p_hat == 1.0);
  CHECK(run_trials(fixture("filtered-declarative"), 1000, 42).p_hat == 0.0);
  const auto est = run_trials(fixture("filtered-programmatic"), 200, 42);
  CHECK(est.p_hat == 1.0);
  CHECK(est.reached == std::vector<std::int64_t>{200, 200});
  CHECK_THROWS_AS(run_trials(fixture("canonical-install"), 0, 1), InputError);
}

TEST_CASE("run_trials does not depend on thread count") {
  auto script = fixture("canonical-install");
  script.user.sigma_dp = 30.0;
  script.user.taps_per_step = 2;
  const auto one = run_trials(script, 3001, 9, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = run_trials(script, 3001, 9, threads);
    CHECK(many.successes == one.successes);
    CHECK(many.reached == one.reached);
  }
  // Trial i is exactly simulate(script, trial_seed(seed, i)).
  std::int64_t successes = 0;
  for (std::uint64_t i = 0; i < 3001; ++i) successes += simulate(script, trial_seed(9, i)).succeeded();
  CHECK(successes == one.successes);
}

TEST_CASE("very noisy single taps mostly fail, below the analytic bound") {
  auto script = fixture("canonical-install");
  script.user.sigma_dp = 10.0 * 148.0;
  script.user.taps_per_step = 1;
  const auto est = run_trials(script, 20000, 5);
  const double analytic = analytic_success(script).overall;
  CHECK(est.p_hat < 0.01);
  // Upper edge of the Wilson interval must clear the closed form.
  CHECK(est.ci95.first <= analytic);
}

TEST_CASE("wilson interval") {
  const auto [lo, hi] = wilson_interval(1000, 1000);
  CHECK(hi == 1.0);
  CHECK(lo == doctest::Approx(0.996173).epsilon(1e-5));
  const auto [lo0, hi0] = wilson_interval(0, 1000);
  CHECK(lo0 == 0.0);
  CHECK(hi0 == doctest::Approx(0.003827).epsilon(1e-3));
  const auto [l, h] = wilson_interval(50, 100);
  CHECK(l == doctest::Approx(0.403832).epsilon(1e-5));
  CHECK(h == doctest::Approx(0.596168).epsilon(1e-5));
}

TEST_CASE("payload risk") {
  const auto sms = payload_risk(InstallerPayload{"x", {"INTERNET", "READ_SMS"}});
  CHECK(sms.impact == Level::High);
  CHECK(sms.privacy_permissions == std::vector<std::string>{"READ_SMS"});
  CHECK(payload_risk(InstallerPayload{"x", {"INTERNET"}}).impact == Level::Medium);
  CHECK(payload_risk(UrlOpenPayload{UrlScheme::Tel, "tel:1"}).impact == Level::Low);
  CHECK(payload_risk(UrlOpenPayload{UrlScheme::Http, "http://a"}).impact == Level::Medium);
  CHECK(payload_risk(UrlOpenPayload{UrlScheme::Https, "https://a"}).impact == Level::Medium);
  CHECK(payload_risk(UrlOpenPayload{UrlScheme::Market, "market://details?id=x"}).impact == Level::High);
  CHECK(payload_risk(LaunchIntentPayload{SystemSettingsIntent{}}).impact == Level::Medium);
  CHECK(payload_risk(LaunchIntentPayload{ThirdPartyPackageIntent{"com.bank.app"}}).impact == Level::Medium);
  CHECK_THROWS_AS(payload_risk(InstallerPayload{"x", {"SEND_SMS"}}), InputError);
}

TEST_CASE("permission catalog sets are disjoint") {
  for (auto name : permissions::kEnablers) CHECK_FALSE(permissions::is_privacy(name));
  for (auto name : permissions::kPrivacy) CHECK_FALSE(permissions::is_enabler(name));
}
