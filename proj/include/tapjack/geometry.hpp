#pragma once

#include <cstdint>
#include <string>

namespace tapjack {

struct DeviceProfile {
  std::string name;
  int width_px = 0;
  int height_px = 0;
  double density = 1.0;  // physical pixels per dp

  double width_dp() const { return width_px / density; }
  double height_dp() const { return height_px / density; }

  bool operator==(const DeviceProfile&) const = default;
};

// Throws InputError if the profile has a non-positive dimension or density.
void check_device(const DeviceProfile& device);

struct DpPoint {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const DpPoint&) const = default;
};

struct DpRect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  bool empty() const { return w <= 0.0 || h <= 0.0; }
  DpPoint center() const { return {x + w / 2.0, y + h / 2.0}; }

  bool operator==(const DpRect&) const = default;
};

struct PxPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  bool operator==(const PxPoint&) const = default;
};

// Half-open pixel box [x0, x1) x [y0, y1).
struct PxRect {
  std::int64_t x0 = 0;
  std::int64_t y0 = 0;
  std::int64_t x1 = 0;
  std::int64_t y1 = 0;

  bool operator==(const PxRect&) const = default;
};

// Each coordinate is scaled by the density and rounded half away from zero.
PxPoint dp_to_px(DpPoint p, const DeviceProfile& device);
// Corners are converted independently with the same rounding as points.
PxRect rect_to_px(const DpRect& r, const DeviceProfile& device);
DpPoint px_to_dp(PxPoint p, const DeviceProfile& device);

// Half-open hit test: near edges inclusive, far edges exclusive.
bool contains(const DpRect& r, DpPoint p);
bool contains(const PxRect& r, PxPoint p);

// True iff the open interiors overlap; rects sharing only an edge do not intersect.
bool intersects(const DpRect& a, const DpRect& b);

// True iff `inner` lies entirely inside `outer` (edges may coincide).
bool within(const DpRect& inner, const DpRect& outer);

DpRect screen_bounds_dp(const DeviceProfile& device);
bool in_bounds(PxPoint p, const DeviceProfile& device);

}  // namespace tapjack
