#include "collimator/pose.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "collimator/errors.hpp"

namespace collimator {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;
constexpr double kRadPerDeg = std::numbers::pi / 180.0;
constexpr double kGimbalToleranceDeg = 1e-6;

}  // namespace

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) {
    throw std::invalid_argument("cannot normalize a zero-length vector");
  }
  return *this * (1.0 / n);
}

UnitQuat UnitQuat::normalized(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidQuaternion("quaternion has zero or non-finite norm");
  }
  const double s = (w < 0.0 ? -1.0 : 1.0) / n;
  return {w * s, x * s, y * s, z * s};
}

UnitQuat UnitQuat::from_wxyz(double w, double x, double y, double z, double tolerance) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!std::isfinite(n) || std::abs(n - 1.0) > tolerance) {
    throw InvalidQuaternion("quaternion norm " + std::to_string(n) + " is not 1");
  }
  return normalized(w, x, y, z);
}

UnitQuat UnitQuat::from_axis_angle(const Vec3& axis, double angle_deg) {
  const Vec3 n = axis.normalized();
  const double half = 0.5 * angle_deg * kRadPerDeg;
  const double s = std::sin(half);
  return normalized(std::cos(half), n.x * s, n.y * s, n.z * s);
}

UnitQuat UnitQuat::from_euler(double x_deg, double y_deg, double z_deg) {
  return from_axis_angle(kUnitZ, z_deg) * from_axis_angle(kUnitY, y_deg) *
         from_axis_angle(kUnitX, x_deg);
}

UnitQuat UnitQuat::between(const Vec3& from, const Vec3& to) {
  const Vec3 a = from.normalized();
  const Vec3 b = to.normalized();
  const double d = dot(a, b);
  if (d < -1.0 + 1e-12) {
    Vec3 perp = cross(a, kUnitX);
    if (perp.norm() < 1e-6) {
      perp = cross(a, kUnitZ);
    }
    return from_axis_angle(perp, 180.0);
  }
  const Vec3 c = cross(a, b);
  return normalized(1.0 + d, c.x, c.y, c.z);
}

UnitQuat UnitQuat::inverse() const { return {w_, -x_, -y_, -z_}; }

Vec3 UnitQuat::rotate(const Vec3& v) const {
  const Vec3 u{x_, y_, z_};
  const Vec3 t = cross(u, v) * 2.0;
  return v + t * w_ + cross(u, t);
}

double UnitQuat::angle_deg() const {
  // atan2 form keeps precision near the identity where acos(|w|) does not.
  const double v = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
  return 2.0 * std::atan2(v, std::abs(w_)) * kDegPerRad;
}

UnitQuat operator*(const UnitQuat& a, const UnitQuat& b) {
  return UnitQuat::normalized(a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
                              a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
                              a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
                              a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_);
}

double wrap_degrees(double deg) {
  double r = std::remainder(deg, 360.0);
  if (r <= -180.0) {
    r += 360.0;
  }
  return r;
}

Vec3 positional_error(const Vec3& tool_position, const Vec3& target_position) {
  return tool_position - target_position;
}

UnitQuat angular_error(const UnitQuat& tool_orientation, const UnitQuat& target_orientation) {
  return tool_orientation * target_orientation.inverse();
}

Magnitudes magnitudes(const Vec3& pe, const UnitQuat& ae) { return {pe.norm(), ae.angle_deg()}; }

EulerAngles euler_components(const UnitQuat& q) {
  const double w = q.w();
  const double x = q.x();
  const double y = q.y();
  const double z = q.z();

  const double r00 = 1.0 - 2.0 * (y * y + z * z);
  const double r01 = 2.0 * (x * y - w * z);
  const double r10 = 2.0 * (x * y + w * z);
  const double r11 = 1.0 - 2.0 * (x * x + z * z);
  const double r20 = 2.0 * (x * z - w * y);
  const double r21 = 2.0 * (y * z + w * x);
  const double r22 = 1.0 - 2.0 * (x * x + y * y);

  EulerAngles out;
  out.y_deg = std::atan2(-r20, std::hypot(r00, r10)) * kDegPerRad;
  if (90.0 - std::abs(out.y_deg) <= kGimbalToleranceDeg) {
    // Only x - z (or x + z) is observable; put it all in x.
    out.gimbal_lock = true;
    out.z_deg = 0.0;
    out.x_deg = out.y_deg > 0.0 ? std::atan2(r01, r11) : std::atan2(-r01, r11);
    out.x_deg *= kDegPerRad;
  } else {
    out.x_deg = std::atan2(r21, r22) * kDegPerRad;
    out.z_deg = std::atan2(r10, r00) * kDegPerRad;
  }
  out.x_deg = wrap_degrees(out.x_deg);
  out.z_deg = wrap_degrees(out.z_deg);
  return out;
}

SwingTwist swing_twist(const UnitQuat& q, const Vec3& axis) {
  const double len = axis.norm();
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw std::invalid_argument("swing/twist axis must be non-zero");
  }
  const Vec3 n = axis * (1.0 / len);
  const double p = q.x() * n.x + q.y() * n.y + q.z() * n.z;

  SwingTwist out;
  if (std::abs(p) < 1e-15 && std::abs(q.w()) < 1e-15) {
    // Half-turn about an axis perpendicular to n: pure swing.
    out.twist = UnitQuat{};
  } else {
    out.twist = UnitQuat::normalized(q.w(), n.x * p, n.y * p, n.z * p);
  }
  out.swing = q * out.twist.inverse();
  out.swing_deg = out.swing.angle_deg();

  const double tp = out.twist.x() * n.x + out.twist.y() * n.y + out.twist.z() * n.z;
  out.twist_deg = wrap_degrees(2.0 * std::atan2(tp, out.twist.w()) * kDegPerRad);
  return out;
}

double angle_between_deg(const Vec3& a, const Vec3& b) {
  return std::atan2(cross(a, b).norm(), dot(a, b)) * kDegPerRad;
}

ErrorState compute_error(const Pose& tool, const Pose& target, const Vec3& tool_axis) {
  ErrorState s;
  s.pe = positional_error(tool.position, target.position);
  s.ae = angular_error(tool.orientation, target.orientation);
  const Magnitudes m = magnitudes(s.pe, s.ae);
  s.pem = m.pem;
  s.aem = m.aem;
  s.ae_euler = euler_components(s.ae);
  const SwingTwist st = swing_twist(s.ae, target.orientation.rotate(tool_axis));
  s.swing_deg = st.swing_deg;
  s.twist_deg = st.twist_deg;
  return s;
}

}  // namespace collimator
