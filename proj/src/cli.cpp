#include "tapjack/cli.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tapjack/documents.hpp"
#include "tapjack/errors.hpp"

namespace tapjack::cli {

namespace {

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void print_violations(const std::vector<Violation>& violations, std::ostream& out) {
  for (const auto& v : violations) {
    out << "[" << to_string(v.severity) << "] " << to_string(v.kind) << ": " << v.detail << "\n";
  }
}

// Loads and validates; on failure reports and returns the exit code to use.
struct Loaded {
  std::optional<AttackScript> script;
  std::vector<Violation> violations;
  int code = kOk;
};

Loaded load(const std::filesystem::path& path, const LayoutOptions& layout, std::ostream& err) {
  Loaded result;
  try {
    result.script = load_scenario(path);
  } catch (const DocumentError& e) {
    err << "error: " << path.string() << ": " << e.what() << "\n";
    result.code = kBadInput;
    return result;
  }
  result.violations = validate_layout(*result.script, layout);
  if (has_errors(result.violations)) result.code = kLayoutErrors;
  return result;
}

}  // namespace

std::optional<TapSpec> parse_tap(const std::string& text) {
  std::istringstream in(text);
  TapSpec tap;
  char c1 = 0;
  char c2 = 0;
  if (!(in >> tap.x >> c1 >> tap.y >> c2 >> tap.t_ms) || c1 != ',' || c2 != ',') {
    return std::nullopt;
  }
  in >> std::ws;
  if (!in.eof()) return std::nullopt;
  return tap;
}

int cmd_validate(const std::filesystem::path& path, const LayoutOptions& layout, std::ostream& out,
                 std::ostream& err) {
  const auto loaded = load(path, layout, err);
  if (!loaded.script) return loaded.code;

  print_violations(loaded.violations, out);
  const auto errors = std::count_if(loaded.violations.begin(), loaded.violations.end(),
                                    [](const Violation& v) { return v.severity == Severity::Error; });
  const auto warnings = static_cast<std::ptrdiff_t>(loaded.violations.size()) - errors;
  out << path.filename().string() << ": " << errors << " error(s), " << warnings
      << " warning(s)\n";
  return loaded.code;
}

int cmd_simulate(const std::filesystem::path& path, const RunOptions& options, std::ostream& out,
                 std::ostream& err) {
  const auto loaded = load(path, options.layout, err);
  if (!loaded.script) return loaded.code;
  if (loaded.code != kOk) {
    print_violations(loaded.violations, err);
    return loaded.code;
  }
  for (const auto& v : loaded.violations) {
    err << "warning: " << to_string(v.kind) << ": " << v.detail << "\n";
  }
  if (options.trials < 1) {
    err << "error: --trials must be >= 1\n";
    return kBadInput;
  }

  const auto& script = *loaded.script;
  const auto estimate = run_trials(script, options.trials, options.seed);
  const auto ratings = rate_attack(script);

  if (options.format == Format::Json) {
    nlohmann::json doc;
    doc["trials"] = {{"n", estimate.n},
                     {"seed", options.seed},
                     {"successes", estimate.successes},
                     {"p_hat", estimate.p_hat},
                     {"ci95", nlohmann::json::array({estimate.ci95.first, estimate.ci95.second})}};
    doc["ratings"] = ratings_to_json(ratings);
    out << doc.dump(2) << "\n";
    return kOk;
  }
  out << "policy: " << to_string(script.policy) << "\n"
      << "trials: " << estimate.n << "\n"
      << "seed: " << options.seed << "\n"
      << "successes: " << estimate.successes << "\n"
      << "p_hat: " << fixed(estimate.p_hat) << "\n"
      << "ci95: [" << fixed(estimate.ci95.first) << ", " << fixed(estimate.ci95.second) << "]\n"
      << "ratings: " << ratings_line(ratings) << "\n";
  return kOk;
}

int cmd_trace(const std::filesystem::path& path, const TapSpec& tap, std::ostream& out,
              std::ostream& err) {
  AttackScript script;
  try {
    script = load_scenario(path);
  } catch (const DocumentError& e) {
    err << "error: " << path.string() << ": " << e.what() << "\n";
    return kBadInput;
  }
  if (tap.step >= script.step_count()) {
    err << "error: step " << tap.step << " out of range; the flow has " << script.step_count()
        << " screen(s)\n";
    return kBadInput;
  }

  PxPoint px;
  if (tap.in_px) {
    px = {static_cast<std::int64_t>(std::llround(tap.x)), static_cast<std::int64_t>(std::llround(tap.y))};
  } else {
    px = dp_to_px(DpPoint{tap.x, tap.y}, script.device);
  }
  const DpPoint dp = px_to_dp(px, script.device);
  const auto stack = script.stack_for_step(tap.step);

  DispatchOutcome outcome;
  try {
    outcome = dispatch(stack, TouchEvent{px, tap.t_ms});
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  out << "t=" << tap.t_ms << " screen=" << stack.current_screen.name << " dp=(" << fixed(dp.x, 2)
      << "," << fixed(dp.y, 2) << ") px=(" << px.x << "," << px.y
      << ") policy=" << to_string(stack.policy) << " -> " << to_string(outcome);
  if (!is_delivered(outcome)) {
    out << " obscured=" << (is_point_obscured(stack, px, tap.t_ms) ? "true" : "false");
  }
  out << "\n";
  return kOk;
}

int cmd_report(const std::filesystem::path& path, const RunOptions& options, std::ostream& out,
               std::ostream& err) {
  const auto loaded = load(path, options.layout, err);
  if (!loaded.script) return loaded.code;
  if (loaded.code != kOk) {
    print_violations(loaded.violations, out);
    err << "error: layout errors; no success assessment produced\n";
    return loaded.code;
  }
  if (options.trials < 1) {
    err << "error: --trials must be >= 1\n";
    return kBadInput;
  }

  const auto report = assess(*loaded.script, {options.layout, options.trials, options.seed});

  if (options.format == Format::Json) {
    out << report_to_json(report).dump(2) << "\n";
    return kOk;
  }
  out << "violations:";
  if (report.violations.empty()) out << " none";
  out << "\n";
  print_violations(report.violations, out);
  out << "per-step success (" << to_string(report.success_method) << "):";
  for (const double s : report.per_step_success) out << " " << fixed(s);
  out << "\n"
      << "overall success: " << fixed(report.overall_success) << "\n";
  if (report.trials) {
    const auto& t = *report.trials;
    out << "trials: n=" << t.n << " seed=" << t.seed << " p_hat=" << fixed(t.p_hat) << " ci95=["
        << fixed(t.ci95_low) << ", " << fixed(t.ci95_high) << "]\n";
  }
  out << "ratings: " << ratings_line(report.ratings) << "\n" << ratings_list(report.ratings);
  out << "stealth notes:";
  if (report.stealth_notes.empty()) out << " none";
  out << "\n";
  for (const auto& note : report.stealth_notes) out << "  - " << note << "\n";
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tapjacking attack simulator and feasibility analyzer", "tapjack"};
  app.require_subcommand(1);

  std::string path;
  RunOptions options;
  std::string format = "text";
  std::string tap_text;
  bool tap_px = false;
  std::size_t tap_step = 0;

  auto add_layout = [&](CLI::App* sub) {
    sub->add_option("--min-target-dp", options.layout.min_target_dp,
                    "Smallest comfortable advance target edge in dp")
        ->check(CLI::PositiveNumber);
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--trials", options.trials, "Number of Monte Carlo trials")->capture_default_str();
    sub->add_option("--seed", options.seed, "Base RNG seed")->capture_default_str();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    add_layout(sub);
  };

  auto* validate = app.add_subcommand("validate", "Check a scenario's layout");
  validate->add_option("scenario", path, "Scenario file")->required();
  add_layout(validate);

  auto* simulate = app.add_subcommand("simulate", "Estimate attack success by simulation");
  simulate->add_option("scenario", path, "Scenario file")->required();
  add_run(simulate);

  auto* trace = app.add_subcommand("trace", "Dispatch one tap and print the outcome");
  trace->add_option("scenario", path, "Scenario file")->required();
  trace->add_option("--tap", tap_text, "Tap as x,y,t (dp unless --px, t in ms)")->required();
  trace->add_flag("--px", tap_px, "Interpret tap coordinates as physical pixels");
  trace->add_option("--step", tap_step, "Index of the screen underneath")->capture_default_str();

  auto* report = app.add_subcommand("report", "Full feasibility report");
  report->add_option("scenario", path, "Scenario file")->required();
  add_run(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) {
      err << "run with --help for usage\n";
    } else {
      err << app.help();
    }
    return kBadInput;
  }
  options.format = format == "json" ? Format::Json : Format::Text;

  if (validate->parsed()) return cmd_validate(path, options.layout, out, err);
  if (simulate->parsed()) return cmd_simulate(path, options, out, err);
  if (report->parsed()) return cmd_report(path, options, out, err);

  auto tap = parse_tap(tap_text);
  if (!tap) {
    err << "error: --tap expects x,y,t, got '" << tap_text << "'\n";
    return kBadInput;
  }
  tap->in_px = tap_px;
  tap->step = tap_step;
  return cmd_trace(path, *tap, out, err);
}

}  // namespace tapjack::cli
