#include "tapjack/geometry.hpp"

#include <cmath>

#include "tapjack/errors.hpp"

namespace tapjack {

void check_device(const DeviceProfile& device) {
  if (device.width_px <= 0 || device.height_px <= 0) {
    throw InputError("device '" + device.name + "': width_px and height_px must be > 0");
  }
  if (!(device.density > 0.0) || !std::isfinite(device.density)) {
    throw InputError("device '" + device.name + "': density must be > 0");
  }
}

namespace {

std::int64_t scale_round(double dp, double density) {
  return static_cast<std::int64_t>(std::llround(dp * density));
}

}  // namespace

PxPoint dp_to_px(DpPoint p, const DeviceProfile& device) {
  return {scale_round(p.x, device.density), scale_round(p.y, device.density)};
}

PxRect rect_to_px(const DpRect& r, const DeviceProfile& device) {
  return {scale_round(r.x, device.density), scale_round(r.y, device.density),
          scale_round(r.right(), device.density), scale_round(r.bottom(), device.density)};
}

DpPoint px_to_dp(PxPoint p, const DeviceProfile& device) {
  return {static_cast<double>(p.x) / device.density, static_cast<double>(p.y) / device.density};
}

bool contains(const DpRect& r, DpPoint p) {
  return r.x <= p.x && p.x < r.right() && r.y <= p.y && p.y < r.bottom();
}

bool contains(const PxRect& r, PxPoint p) {
  return r.x0 <= p.x && p.x < r.x1 && r.y0 <= p.y && p.y < r.y1;
}

bool intersects(const DpRect& a, const DpRect& b) {
  if (a.empty() || b.empty()) return false;
  return a.x < b.right() && b.x < a.right() && a.y < b.bottom() && b.y < a.bottom();
}

bool within(const DpRect& inner, const DpRect& outer) {
  return outer.x <= inner.x && inner.right() <= outer.right() && outer.y <= inner.y &&
         inner.bottom() <= outer.bottom();
}

DpRect screen_bounds_dp(const DeviceProfile& device) {
  return {0.0, 0.0, device.width_dp(), device.height_dp()};
}

bool in_bounds(PxPoint p, const DeviceProfile& device) {
  return p.x >= 0 && p.y >= 0 && p.x < device.width_px && p.y < device.height_px;
}

}  // namespace tapjack
