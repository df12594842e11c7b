#include "tapjack/documents.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "tapjack/errors.hpp"

namespace tapjack {

using nlohmann::json;

namespace {

// Walks a JSON tree while tracking the key path for diagnostics.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw DocumentError((path_.empty() ? std::string("<root>") : path_) + ": " + what);
  }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!node_.is_object()) fail("expected an object");
    for (const auto& [key, value] : node_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        Reader(value, join(key)).fail("unknown key");
      }
    }
  }

  Reader at(std::string_view key) const {
    auto it = node_.find(key);
    if (it == node_.end()) Reader(node_, join(key)).fail("missing key");
    return Reader(*it, join(key));
  }

  bool has(std::string_view key) const { return node_.contains(key); }

  std::vector<Reader> elements() const {
    if (!node_.is_array()) fail("expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < node_.size(); ++i) {
      out.emplace_back(node_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  std::string str() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    return node_.get<double>();
  }

  std::int64_t integer() const {
    if (node_.is_number_integer()) return node_.get<std::int64_t>();
    if (node_.is_number_float()) {
      const double d = node_.get<double>();
      if (std::floor(d) == d && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
    }
    fail("expected an integer");
  }

  std::uint64_t unsigned_integer() const {
    if (node_.is_number_unsigned()) return node_.get<std::uint64_t>();
    fail("expected a non-negative integer");
  }

  bool is_null() const { return node_.is_null(); }

  DpRect rect() const {
    const auto xs = elements();
    if (xs.size() != 4) fail("expected [x, y, w, h]");
    DpRect r{xs[0].number(), xs[1].number(), xs[2].number(), xs[3].number()};
    if (r.w < 0 || r.h < 0) fail("width and height must be >= 0");
    return r;
  }

  DpPoint point() const {
    const auto xs = elements();
    if (xs.size() != 2) fail("expected [x, y]");
    return {xs[0].number(), xs[1].number()};
  }

 private:
  std::string join(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json& node_;
  std::string path_;
};

template <typename Fn>
auto checked(const Reader& at, Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    at.fail(e.what());
  }
}

int to_int(const Reader& r) {
  const auto v = r.integer();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    r.fail("integer out of range");
  }
  return static_cast<int>(v);
}

DeviceProfile read_device(const Reader& r) {
  r.expect_object({"name", "width_px", "height_px", "density"});
  DeviceProfile d{r.at("name").str(), to_int(r.at("width_px")), to_int(r.at("height_px")),
                  r.at("density").number()};
  checked(r, [&] { check_device(d); return 0; });
  return d;
}

TargetAction read_action(const Reader& r) {
  const auto s = r.str();
  for (auto a : {TargetAction::Advance, TargetAction::Divert, TargetAction::Inert}) {
    if (to_string(a) == s) return a;
  }
  r.fail("unknown action '" + s + "' (expected Advance, Divert or Inert)");
}

Screen read_screen(const Reader& r) {
  r.expect_object({"name", "targets"});
  Screen s{r.at("name").str(), {}};
  for (const auto& t : r.at("targets").elements()) {
    t.expect_object({"name", "rect", "action"});
    s.targets.push_back({t.at("name").str(), t.at("rect").rect(), read_action(t.at("action"))});
  }
  checked(r, [&] { check_screen(s); return 0; });
  return s;
}

OverlaySpec read_overlay(const Reader& r) {
  r.expect_object({"opaque_background", "schedule", "panels"});
  OverlaySpec o;
  o.opaque_background = r.at("opaque_background").boolean();
  const auto sr = r.at("schedule");
  sr.expect_object({"start_ms", "duration_ms", "gap_ms"});
  o.schedule = {sr.at("start_ms").integer(), sr.at("duration_ms").integer(),
                sr.at("gap_ms").integer()};
  checked(sr, [&] { check_schedule(o.schedule); return 0; });
  for (const auto& p : r.at("panels").elements()) {
    p.expect_object({"step", "visual_rect", "aim_point"});
    o.panels.push_back({to_int(p.at("step")), p.at("visual_rect").rect(), p.at("aim_point").point()});
  }
  return o;
}

Payload read_payload(const Reader& r) {
  const auto type = r.at("type").str();
  if (type == "Installer") {
    r.expect_object({"type", "package", "permissions"});
    InstallerPayload p{r.at("package").str(), {}};
    for (const auto& perm : r.at("permissions").elements()) {
      auto name = perm.str();
      if (!permissions::is_known(name)) perm.fail("unknown permission '" + name + "'");
      p.permissions.push_back(std::move(name));
    }
    return p;
  }
  if (type == "UrlOpen") {
    r.expect_object({"type", "scheme", "value"});
    const auto scheme_reader = r.at("scheme");
    const auto scheme = parse_url_scheme(scheme_reader.str());
    if (!scheme) scheme_reader.fail("expected one of market, http, https, tel");
    return UrlOpenPayload{*scheme, r.at("value").str()};
  }
  if (type == "LaunchIntent") {
    const auto kind_reader = r.at("kind");
    const auto kind = kind_reader.str();
    if (kind == "SystemSettings") {
      r.expect_object({"type", "kind"});
      return LaunchIntentPayload{SystemSettingsIntent{}};
    }
    if (kind == "ThirdPartyPackage") {
      r.expect_object({"type", "kind", "package"});
      return LaunchIntentPayload{ThirdPartyPackageIntent{r.at("package").str()}};
    }
    kind_reader.fail("expected SystemSettings or ThirdPartyPackage");
  }
  r.at("type").fail("unknown payload type '" + type + "'");
}

TouchPolicy read_policy(const Reader& r) {
  const auto type = r.at("type").str();
  if (type == "Default") {
    r.expect_object({"type"});
    return DefaultPolicy{};
  }
  if (type == "FilterWhenObscured") {
    r.expect_object({"type"});
    return FilterWhenObscured{};
  }
  if (type == "RecentFocusFilter") {
    r.expect_object({"type", "window_ms"});
    const auto w = r.at("window_ms");
    RecentFocusFilter policy{w.integer()};
    checked(w, [&] { check_policy(policy); return 0; });
    return policy;
  }
  r.at("type").fail("unknown policy type '" + type + "'");
}

UserModel read_user(const Reader& r) {
  r.expect_object({"sigma_dp", "taps_per_step", "inter_tap_ms", "start_delay_ms"});
  UserModel u{r.at("sigma_dp").number(), to_int(r.at("taps_per_step")),
              r.at("inter_tap_ms").integer(), r.at("start_delay_ms").integer()};
  checked(r, [&] { check_user(u); return 0; });
  return u;
}

Concealment read_concealment(const Reader& r) {
  r.expect_object({"hide_launcher_icon", "generic_name"});
  Concealment c;
  c.hide_launcher_icon = r.at("hide_launcher_icon").boolean();
  const auto name = r.at("generic_name");
  if (!name.is_null()) c.generic_name = name.str();
  return c;
}

json rect_json(const DpRect& r) { return json::array({r.x, r.y, r.w, r.h}); }

}  // namespace

AttackScript scenario_from_json(const json& doc) {
  Reader root(doc, "");
  root.expect_object({"device", "screens", "overlay", "payload", "policy", "user", "concealment"});
  AttackScript script;
  script.device = read_device(root.at("device"));
  for (const auto& s : root.at("screens").elements()) script.screens.push_back(read_screen(s));
  script.overlay = read_overlay(root.at("overlay"));
  script.payload = read_payload(root.at("payload"));
  script.policy = read_policy(root.at("policy"));
  script.user = read_user(root.at("user"));
  script.concealment = read_concealment(root.at("concealment"));
  checked(root.at("overlay"), [&] { check_overlay(script.overlay, script.screens.size()); return 0; });
  checked(root, [&] { check_structure(script); return 0; });
  return script;
}

json scenario_to_json(const AttackScript& script) {
  json doc;
  doc["device"] = {{"name", script.device.name},
                   {"width_px", script.device.width_px},
                   {"height_px", script.device.height_px},
                   {"density", script.device.density}};

  doc["screens"] = json::array();
  for (const auto& screen : script.screens) {
    json targets = json::array();
    for (const auto& t : screen.targets) {
      targets.push_back({{"name", t.name}, {"rect", rect_json(t.rect)},
                         {"action", std::string(to_string(t.action))}});
    }
    doc["screens"].push_back({{"name", screen.name}, {"targets", std::move(targets)}});
  }

  json panels = json::array();
  for (const auto& p : script.overlay.panels) {
    panels.push_back({{"step", p.step_index},
                      {"visual_rect", rect_json(p.visual_rect)},
                      {"aim_point", json::array({p.aim_point.x, p.aim_point.y})}});
  }
  const auto& s = script.overlay.schedule;
  doc["overlay"] = {{"opaque_background", script.overlay.opaque_background},
                    {"schedule",
                     {{"start_ms", s.start_ms}, {"duration_ms", s.duration_ms}, {"gap_ms", s.gap_ms}}},
                    {"panels", std::move(panels)}};

  struct PayloadVisitor {
    json operator()(const InstallerPayload& p) const {
      return {{"type", "Installer"}, {"package", p.package}, {"permissions", p.permissions}};
    }
    json operator()(const UrlOpenPayload& p) const {
      return {{"type", "UrlOpen"}, {"scheme", std::string(to_string(p.scheme))}, {"value", p.value}};
    }
    json operator()(const LaunchIntentPayload& p) const {
      if (const auto* third = std::get_if<ThirdPartyPackageIntent>(&p.kind)) {
        return {{"type", "LaunchIntent"}, {"kind", "ThirdPartyPackage"}, {"package", third->package}};
      }
      return {{"type", "LaunchIntent"}, {"kind", "SystemSettings"}};
    }
  };
  doc["payload"] = std::visit(PayloadVisitor{}, script.payload);

  if (const auto* recent = std::get_if<RecentFocusFilter>(&script.policy)) {
    doc["policy"] = {{"type", "RecentFocusFilter"}, {"window_ms", recent->window_ms}};
  } else {
    doc["policy"] = {{"type", to_string(script.policy)}};
  }

  doc["user"] = {{"sigma_dp", script.user.sigma_dp},
                 {"taps_per_step", script.user.taps_per_step},
                 {"inter_tap_ms", script.user.inter_tap_ms},
                 {"start_delay_ms", script.user.start_delay_ms}};
  doc["concealment"] = {{"hide_launcher_icon", script.concealment.hide_launcher_icon},
                        {"generic_name", script.concealment.generic_name
                                             ? json(*script.concealment.generic_name)
                                             : json(nullptr)}};
  return doc;
}

AttackScript parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  }
  return scenario_from_json(doc);
}

AttackScript load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

json ratings_to_json(const Ratings& ratings) {
  return {{"exploitability", std::string(to_string(ratings.exploitability))},
          {"impact", std::string(to_string(ratings.impact))},
          {"complexity", std::string(to_string(ratings.complexity))},
          {"overall", std::string(to_string(ratings.overall))}};
}

json report_to_json(const FeasibilityReport& report) {
  json doc;
  doc["violations"] = json::array();
  for (const auto& v : report.violations) {
    doc["violations"].push_back({{"kind", std::string(to_string(v.kind))},
                                 {"severity", std::string(to_string(v.severity))},
                                 {"detail", v.detail}});
  }
  doc["per_step_success"] = report.per_step_success;
  doc["overall_success"] = report.overall_success;
  doc["success_method"] = std::string(to_string(report.success_method));
  doc["ratings"] = ratings_to_json(report.ratings);
  if (report.trials) {
    const auto& t = *report.trials;
    doc["trials"] = {{"n", t.n},
                     {"seed", t.seed},
                     {"p_hat", t.p_hat},
                     {"ci95", json::array({t.ci95_low, t.ci95_high})}};
  }
  doc["stealth_notes"] = report.stealth_notes;
  return doc;
}

namespace {

Level read_level(const Reader& r) {
  const auto s = r.str();
  for (auto l : {Level::Low, Level::Medium, Level::High}) {
    if (to_string(l) == s) return l;
  }
  r.fail("expected Low, Medium or High");
}

}  // namespace

FeasibilityReport report_from_json(const json& doc) {
  Reader root(doc, "");
  root.expect_object({"violations", "per_step_success", "overall_success", "success_method",
                      "ratings", "trials", "stealth_notes"});
  FeasibilityReport report;
  for (const auto& v : root.at("violations").elements()) {
    v.expect_object({"kind", "severity", "detail"});
    const auto kind = parse_violation_kind(v.at("kind").str());
    if (!kind) v.at("kind").fail("unknown violation kind");
    const auto severity = parse_severity(v.at("severity").str());
    if (!severity) v.at("severity").fail("expected Error or Warning");
    report.violations.push_back({*kind, v.at("detail").str(), *severity});
  }
  for (const auto& p : root.at("per_step_success").elements()) {
    report.per_step_success.push_back(p.number());
  }
  report.overall_success = root.at("overall_success").number();

  const auto method = root.at("success_method");
  if (method.str() == "analytic") {
    report.success_method = SuccessMethod::Analytic;
  } else if (method.str() == "monte_carlo") {
    report.success_method = SuccessMethod::MonteCarlo;
  } else {
    method.fail("expected analytic or monte_carlo");
  }

  const auto ratings = root.at("ratings");
  ratings.expect_object({"exploitability", "impact", "complexity", "overall"});
  const auto e = ratings.at("exploitability");
  if (e.str() == "ProofOfConcept") {
    report.ratings.exploitability = Exploitability::ProofOfConcept;
  } else if (e.str() == "Weaponized") {
    report.ratings.exploitability = Exploitability::Weaponized;
  } else {
    e.fail("expected ProofOfConcept or Weaponized");
  }
  report.ratings.impact = read_level(ratings.at("impact"));
  const auto c = ratings.at("complexity");
  if (c.str() == "High") {
    report.ratings.complexity = Complexity::High;
  } else if (c.str() == "VeryHigh") {
    report.ratings.complexity = Complexity::VeryHigh;
  } else {
    c.fail("expected High or VeryHigh");
  }
  report.ratings.overall = read_level(ratings.at("overall"));

  if (root.has("trials")) {
    const auto t = root.at("trials");
    t.expect_object({"n", "seed", "p_hat", "ci95"});
    const auto ci = t.at("ci95").elements();
    if (ci.size() != 2) t.at("ci95").fail("expected [low, high]");
    report.trials = TrialSummary{t.at("n").integer(), t.at("seed").unsigned_integer(),
                                 t.at("p_hat").number(), ci[0].number(), ci[1].number()};
  }
  for (const auto& n : root.at("stealth_notes").elements()) report.stealth_notes.push_back(n.str());
  return report;
}

}  // namespace tapjack
