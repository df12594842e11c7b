#include "tapjack/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tapjack/errors.hpp"

namespace tapjack {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::OverlapViolation: return "OverlapViolation";
    case ViolationKind::ExcessiveSteps: return "ExcessiveSteps";
    case ViolationKind::TinyTarget: return "TinyTarget";
    case ViolationKind::AimMismatch: return "AimMismatch";
    case ViolationKind::OutOfBounds: return "OutOfBounds";
  }
  return "?";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "Error" : "Warning";
}

std::optional<ViolationKind> parse_violation_kind(std::string_view text) {
  for (auto k : {ViolationKind::OverlapViolation, ViolationKind::ExcessiveSteps,
                 ViolationKind::TinyTarget, ViolationKind::AimMismatch, ViolationKind::OutOfBounds}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<Severity> parse_severity(std::string_view text) {
  if (text == "Error") return Severity::Error;
  if (text == "Warning") return Severity::Warning;
  return std::nullopt;
}

Severity severity_of(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ExcessiveSteps:
    case ViolationKind::TinyTarget: return Severity::Warning;
    default: return Severity::Error;
  }
}

namespace {

std::string fmt_rect(const DpRect& r) {
  std::ostringstream os;
  os << '[' << r.x << ", " << r.y << ", " << r.w << ", " << r.h << ']';
  return os.str();
}

Violation make(ViolationKind kind, std::string detail) {
  return {kind, std::move(detail), severity_of(kind)};
}

}  // namespace

std::vector<Violation> validate_layout(const AttackScript& script, const LayoutOptions& options) {
  std::vector<Violation> out;
  const auto bounds = screen_bounds_dp(script.device);
  const auto& screens = script.screens;

  if (screens.size() > kMaxComfortableSteps) {
    out.push_back(make(ViolationKind::ExcessiveSteps,
                       std::to_string(screens.size()) + " screens; flows beyond " +
                           std::to_string(kMaxComfortableSteps) + " taps rarely complete"));
  }

  for (const auto& screen : screens) {
    for (const auto& target : screen.targets) {
      if (!within(target.rect, bounds)) {
        out.push_back(make(ViolationKind::OutOfBounds, "target '" + target.name + "' on screen '" +
                                                           screen.name + "' " + fmt_rect(target.rect) +
                                                           " exceeds the " + fmt_rect(bounds) +
                                                           " dp screen"));
      }
      if (target.action == TargetAction::Advance &&
          (target.rect.w < options.min_target_dp || target.rect.h < options.min_target_dp)) {
        std::ostringstream os;
        os << "advance target '" << target.name << "' on screen '" << screen.name << "' is "
           << target.rect.w << "x" << target.rect.h << " dp, below " << options.min_target_dp
           << " dp";
        out.push_back(make(ViolationKind::TinyTarget, os.str()));
      }
    }
  }

  for (const auto& panel : script.overlay.panels) {
    const auto step = static_cast<std::size_t>(panel.step_index);
    const auto& own = screens.at(step);
    const std::string label = "bait for screen '" + own.name + "'";

    if (!within(panel.visual_rect, bounds)) {
      out.push_back(make(ViolationKind::OutOfBounds, label + " " + fmt_rect(panel.visual_rect) +
                                                         " exceeds the " + fmt_rect(bounds) +
                                                         " dp screen"));
    }
    const auto& advance = own.advance_target();
    if (!contains(advance.rect, panel.aim_point)) {
      std::ostringstream os;
      os << label << " aims at (" << panel.aim_point.x << ", " << panel.aim_point.y
         << "), outside advance target '" << advance.name << "' " << fmt_rect(advance.rect);
      out.push_back(make(ViolationKind::AimMismatch, os.str()));
    }
    for (std::size_t j = 0; j < screens.size(); ++j) {
      if (j == step) continue;
      for (const auto& target : screens[j].targets) {
        if (target.action == TargetAction::Inert) continue;
        if (intersects(panel.visual_rect, target.rect)) {
          out.push_back(make(ViolationKind::OverlapViolation,
                             label + " overlaps " + std::string(to_string(target.action)) +
                                 " target '" + target.name + "' on screen '" + screens[j].name +
                                 "'"));
        }
      }
    }
  }
  return out;
}

bool has_errors(std::span<const Violation> violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::Error; });
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double hit_probability(const DpRect& target, DpPoint aim, double sigma_dp) {
  if (target.empty()) return 0.0;
  if (sigma_dp <= 0.0) return contains(target, aim) ? 1.0 : 0.0;
  const double px = normal_cdf((target.right() - aim.x) / sigma_dp) -
                    normal_cdf((target.x - aim.x) / sigma_dp);
  const double py = normal_cdf((target.bottom() - aim.y) / sigma_dp) -
                    normal_cdf((target.y - aim.y) / sigma_dp);
  return px * py;
}

AnalyticSuccess analytic_success(const AttackScript& script) {
  if (!is_default(script.policy)) {
    throw UnsupportedPolicy("no closed form for policy " + to_string(script.policy) +
                            "; estimate with run_trials");
  }
  const int k = script.user.taps_per_step;
  const double sigma = script.user.sigma_dp;

  AnalyticSuccess result;
  for (std::size_t step = 0; step < script.screens.size(); ++step) {
    const auto& screen = script.screens[step];
    const auto aim = script.overlay.panel_for_step(static_cast<int>(step)).aim_point;
    double p_advance = 0.0;
    double p_divert = 0.0;
    for (const auto& target : screen.targets) {
      if (target.action == TargetAction::Advance) p_advance += hit_probability(target.rect, aim, sigma);
      if (target.action == TargetAction::Divert) p_divert += hit_probability(target.rect, aim, sigma);
    }
    const double p_miss = std::max(0.0, 1.0 - p_advance - p_divert);
    // Geometric series over k attempts: sum_{j<k} p_miss^j * p_advance.
    double s = 0.0;
    if (p_miss >= 1.0) {
      s = 0.0;
    } else {
      s = p_advance * (1.0 - std::pow(p_miss, k)) / (1.0 - p_miss);
    }
    result.per_step.push_back(std::clamp(s, 0.0, 1.0));
  }
  result.overall = std::accumulate(result.per_step.begin(), result.per_step.end(), 1.0,
                                   std::multiplies<>());
  return result;
}

std::string_view to_string(Exploitability e) {
  return e == Exploitability::ProofOfConcept ? "ProofOfConcept" : "Weaponized";
}

std::string_view to_string(Complexity c) { return c == Complexity::High ? "High" : "VeryHigh"; }

Ratings rate_attack(const AttackScript& script) {
  Ratings r;
  r.exploitability = Exploitability::ProofOfConcept;
  r.impact = payload_risk(script.payload).impact;

  bool third_party = false;
  if (const auto* intent = std::get_if<LaunchIntentPayload>(&script.payload)) {
    third_party = std::holds_alternative<ThirdPartyPackageIntent>(intent->kind);
  }
  r.complexity = (script.screens.size() >= 2 || third_party) ? Complexity::VeryHigh : Complexity::High;
  r.overall = Level::Low;
  return r;
}

std::string ratings_line(const Ratings& ratings) {
  std::string out;
  out.append(to_string(ratings.exploitability)).append(" / ");
  out.append(to_string(ratings.impact)).append(" / ");
  out.append(to_string(ratings.complexity)).append(" / ");
  out.append(to_string(ratings.overall));
  return out;
}

std::string ratings_list(const Ratings& ratings) {
  const std::string exploitability =
      ratings.exploitability == Exploitability::ProofOfConcept ? "Proof of Concept" : "Weaponized";
  const std::string complexity = ratings.complexity == Complexity::VeryHigh ? "Very High" : "High";
  return "Exploitability - " + exploitability + "\n" +
         "Impact - " + std::string(to_string(ratings.impact)) + "\n" +
         "Complexity - " + complexity + "\n" +
         "Overall - " + std::string(to_string(ratings.overall)) + "\n";
}

std::vector<std::string> stealth_notes(const AttackScript& script) {
  std::vector<std::string> notes;
  if (script.concealment.hide_launcher_icon) {
    notes.push_back(
        "launcher icon hidden: manifest category android.intent.category.LAUNCHER replaced by "
        "android.intent.category.DEFAULT, so the app does not appear in the launcher");
  }
  if (script.concealment.generic_name) {
    notes.push_back("generic app name \"" + *script.concealment.generic_name +
                    "\" is likely to be mistaken for an operating system component");
  }
  return notes;
}

std::string_view to_string(SuccessMethod m) {
  return m == SuccessMethod::Analytic ? "analytic" : "monte_carlo";
}

FeasibilityReport assess(const AttackScript& script, const AssessOptions& options) {
  check_structure(script);
  FeasibilityReport report;
  report.violations = validate_layout(script, options.layout);
  if (has_errors(report.violations)) {
    throw InputError("layout has errors; fix them before assessing success");
  }
  report.ratings = rate_attack(script);
  report.stealth_notes = stealth_notes(script);

  std::optional<SuccessEstimate> estimate;
  if (options.trials > 0) {
    estimate = run_trials(script, options.trials, options.seed);
    report.trials = TrialSummary{estimate->n, options.seed, estimate->p_hat, estimate->ci95.first,
                                 estimate->ci95.second};
  }

  if (is_default(script.policy)) {
    auto analytic = analytic_success(script);
    report.per_step_success = std::move(analytic.per_step);
    report.overall_success = analytic.overall;
    report.success_method = SuccessMethod::Analytic;
  } else {
    if (!estimate) throw InputError("policy " + to_string(script.policy) + " requires trials >= 1");
    std::int64_t entered = estimate->n;
    for (const auto reached : estimate->reached) {
      report.per_step_success.push_back(
          entered > 0 ? static_cast<double>(reached) / static_cast<double>(entered) : 0.0);
      entered = reached;
    }
    report.overall_success = std::accumulate(report.per_step_success.begin(),
                                             report.per_step_success.end(), 1.0,
                                             std::multiplies<>());
    report.success_method = SuccessMethod::MonteCarlo;
  }
  return report;
}

}  // namespace tapjack
