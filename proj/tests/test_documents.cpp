#include "doctest.h"
#include "support.hpp"
#include "tapjack/documents.hpp"

using namespace tapjack;
using nlohmann::json;
using tapjack::testing::fixture;
using tapjack::testing::fixture_path;

namespace {

const char* const kFixtures[] = {"canonical-install", "filtered-declarative", "filtered-programmatic",
                                 "overlap-violation", "tel-payload",          "four-step-warning"};

json canonical_json() { return scenario_to_json(fixture("canonical-install")); }

std::string load_error(const json& doc) {
  try {
    scenario_from_json(doc);
  } catch (const DocumentError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("every fixture survives a serialize/load round trip") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const auto script = fixture(name);
    CHECK(scenario_from_json(scenario_to_json(script)) == script);
    CHECK(parse_scenario(scenario_to_json(script).dump()) == script);
  }
}

TEST_CASE("payload and policy variants round trip") {
  auto script = fixture("tel-payload");
  for (const Payload& payload :
       {Payload{UrlOpenPayload{UrlScheme::Https, "https://example.org"}},
        Payload{UrlOpenPayload{UrlScheme::Market, "market://details?id=x"}},
        Payload{LaunchIntentPayload{SystemSettingsIntent{}}},
        Payload{LaunchIntentPayload{ThirdPartyPackageIntent{"com.bank.app"}}},
        Payload{InstallerPayload{"p", {"CAMERA", "INTERNET"}}}}) {
    script.payload = payload;
    for (const TouchPolicy& policy : {TouchPolicy{DefaultPolicy{}}, TouchPolicy{FilterWhenObscured{}},
                                      TouchPolicy{RecentFocusFilter{1234}}}) {
      script.policy = policy;
      CHECK(scenario_from_json(scenario_to_json(script)) == script);
    }
  }
}

TEST_CASE("unknown keys are rejected by path") {
  auto doc = canonical_json();
  doc["extra"] = 1;
  CHECK(load_error(doc) == "extra: unknown key");

  doc = canonical_json();
  doc["screens"][1]["targets"][0]["colour"] = "red";
  CHECK(load_error(doc) == "screens[1].targets[0].colour: unknown key");

  doc = canonical_json();
  doc["policy"]["window_ms"] = 5000;
  CHECK(load_error(doc) == "policy.window_ms: unknown key");
}

TEST_CASE("missing and mistyped keys are reported by path") {
  auto doc = canonical_json();
  doc["overlay"]["schedule"].erase("gap_ms");
  CHECK(load_error(doc) == "overlay.schedule.gap_ms: missing key");

  doc = canonical_json();
  doc["device"]["density"] = "high";
  CHECK(load_error(doc) == "device.density: expected a number");

  doc = canonical_json();
  doc["screens"][0]["targets"][1]["rect"] = json::array({1, 2, 3});
  CHECK(load_error(doc) == "screens[0].targets[1].rect: expected [x, y, w, h]");

  doc = canonical_json();
  doc["payload"]["permissions"][0] = "SEND_SMS";
  CHECK(load_error(doc) == "payload.permissions[0]: unknown permission 'SEND_SMS'");

  doc = canonical_json();
  doc["user"]["taps_per_step"] = 1.5;
  CHECK(load_error(doc) == "user.taps_per_step: expected an integer");
}

TEST_CASE("module invariants are re-checked on load") {
  auto doc = canonical_json();
  doc["screens"][0]["targets"][0]["action"] = "Advance";
  CHECK(load_error(doc).find("exactly one Advance") != std::string::npos);

  doc = canonical_json();
  doc["overlay"]["panels"][1]["step"] = 0;
  CHECK(load_error(doc).find("duplicate bait panel") != std::string::npos);

  doc = canonical_json();
  doc["user"]["inter_tap_ms"] = 0;
  CHECK(load_error(doc).rfind("user: ", 0) == 0);

  doc = canonical_json();
  doc["device"]["width_px"] = 0;
  CHECK(load_error(doc).rfind("device: ", 0) == 0);

  doc = canonical_json();
  doc["policy"] = {{"type", "RecentFocusFilter"}, {"window_ms", 0}};
  CHECK(load_error(doc).rfind("policy.window_ms: ", 0) == 0);
}

TEST_CASE("malformed text") {
  CHECK_THROWS_AS(parse_scenario("{\"device\": {"), DocumentError);
  CHECK_THROWS_AS(parse_scenario("[]"), DocumentError);
  CHECK_THROWS_AS(load_scenario(fixture_path("does-not-exist")), DocumentError);
}

TEST_CASE("report documents re-parse to the same report") {
  for (const char* name : {"canonical-install", "filtered-programmatic", "four-step-warning"}) {
    auto script = fixture(name);
    script.user.sigma_dp = 12.5;
    const auto report = assess(script, {{}, 2000, 77});
    const auto text = report_to_json(report).dump(2);
    CHECK(report_from_json(json::parse(text)) == report);
  }
  FeasibilityReport no_trials;
  no_trials.stealth_notes = {"n"};
  CHECK(report_from_json(report_to_json(no_trials)) == no_trials);
}
