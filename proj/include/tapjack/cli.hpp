#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "tapjack/analysis.hpp"

namespace tapjack::cli {

// 0: clean (warnings allowed), 1: layout errors, 2: unreadable or malformed input.
enum ExitCode : int { kOk = 0, kLayoutErrors = 1, kBadInput = 2 };

enum class Format { Text, Json };

struct RunOptions {
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  Format format = Format::Text;
  LayoutOptions layout;
};

struct TapSpec {
  double x = 0.0;
  double y = 0.0;
  std::int64_t t_ms = 0;
  bool in_px = false;   // coordinates are physical pixels instead of dp
  std::size_t step = 0; // which screen of the flow is underneath
};

// Parses "x,y,t".
std::optional<TapSpec> parse_tap(const std::string& text);

int cmd_validate(const std::filesystem::path& path, const LayoutOptions& layout, std::ostream& out,
                 std::ostream& err);
int cmd_simulate(const std::filesystem::path& path, const RunOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_trace(const std::filesystem::path& path, const TapSpec& tap, std::ostream& out,
              std::ostream& err);
int cmd_report(const std::filesystem::path& path, const RunOptions& options, std::ostream& out,
               std::ostream& err);

// Full command line: `tapjack <validate|simulate|trace|report> ...`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tapjack::cli
