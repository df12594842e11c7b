#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tapjack/geometry.hpp"
#include "tapjack/scenario.hpp"

namespace tapjack {

enum class ViolationKind { OverlapViolation, ExcessiveSteps, TinyTarget, AimMismatch, OutOfBounds };
enum class Severity { Error, Warning };

std::string_view to_string(ViolationKind kind);
std::string_view to_string(Severity severity);
std::optional<ViolationKind> parse_violation_kind(std::string_view text);
std::optional<Severity> parse_severity(std::string_view text);

// Overlap, aim and bounds problems are errors; long flows and small targets
// only degrade the attack.
Severity severity_of(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::OverlapViolation;
  std::string detail;
  Severity severity = Severity::Error;

  bool operator==(const Violation&) const = default;
};

inline constexpr std::size_t kMaxComfortableSteps = 3;
inline constexpr double kDefaultMinTargetDp = 48.0;

struct LayoutOptions {
  double min_target_dp = kDefaultMinTargetDp;
};

// Layout checks over a structurally valid script. Violation details name
// screens and targets, never list positions.
std::vector<Violation> validate_layout(const AttackScript& script, const LayoutOptions& options = {});

bool has_errors(std::span<const Violation> violations);

// Standard normal CDF via erfc.
double normal_cdf(double z);

// Probability that a tap aimed at `aim` with per-axis N(0, sigma^2) error lands
// in `target`. Zero for an empty target.
double hit_probability(const DpRect& target, DpPoint aim, double sigma_dp);

struct AnalyticSuccess {
  std::vector<double> per_step;
  double overall = 0.0;
};

// Thrown by analytic_success for policies that filter touches.
class UnsupportedPolicy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed-form success probability under the Default policy. A step fails only
// through a Divert hit or by running out of taps.
AnalyticSuccess analytic_success(const AttackScript& script);

enum class Exploitability { ProofOfConcept, Weaponized };
enum class Complexity { High, VeryHigh };

std::string_view to_string(Exploitability e);
std::string_view to_string(Complexity c);

struct Ratings {
  Exploitability exploitability = Exploitability::ProofOfConcept;
  Level impact = Level::Low;
  Complexity complexity = Complexity::High;
  Level overall = Level::Low;

  bool operator==(const Ratings&) const = default;
};

Ratings rate_attack(const AttackScript& script);

// "ProofOfConcept / High / VeryHigh / Low"
std::string ratings_line(const Ratings& ratings);

// Four lines of "<Category> - <Value>" with human-readable values, e.g.
// "Exploitability - Proof of Concept".
std::string ratings_list(const Ratings& ratings);

std::vector<std::string> stealth_notes(const AttackScript& script);

// ---------------------------------------------------------------------------
// Combined assessment

enum class SuccessMethod { Analytic, MonteCarlo };

std::string_view to_string(SuccessMethod m);

struct TrialSummary {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double p_hat = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;

  bool operator==(const TrialSummary&) const = default;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  std::vector<double> per_step_success;
  double overall_success = 0.0;
  SuccessMethod success_method = SuccessMethod::Analytic;
  Ratings ratings;
  std::optional<TrialSummary> trials;
  std::vector<std::string> stealth_notes;

  bool operator==(const FeasibilityReport&) const = default;
};

struct AssessOptions {
  LayoutOptions layout;
  std::int64_t trials = 1000;  // 0 skips the Monte Carlo run under Default
  std::uint64_t seed = 0;
};

// Validation, success probabilities, ratings and stealth notes. Per-step
// success is analytic under Default; for filtering policies it is estimated
// from the trials (conditional pass rate of each step). Throws InputError if
// the layout has errors.
FeasibilityReport assess(const AttackScript& script, const AssessOptions& options = {});

}  // namespace tapjack
