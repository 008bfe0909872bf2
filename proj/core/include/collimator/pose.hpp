#pragma once

#include <cmath>

namespace collimator {

/// Cartesian vector in millimetres, world frame: +X user's right, +Y up, +Z front.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;

  [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
  [[nodiscard]] Vec3 normalized() const;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline constexpr Vec3 kUnitX{1.0, 0.0, 0.0};
inline constexpr Vec3 kUnitY{0.0, 1.0, 0.0};
inline constexpr Vec3 kUnitZ{0.0, 0.0, 1.0};

/// Unit quaternion with the double cover resolved to w >= 0.
///
/// Every constructor and product normalizes and canonicalizes, so two
/// quaternions describing the same rotation compare equal component-wise
/// (up to rounding), except for the w == 0 half-turn boundary.
class UnitQuat {
 public:
  /// Identity rotation.
  constexpr UnitQuat() = default;

  /// Accepts (w, x, y, z) whose norm is within `tolerance` of 1, then
  /// renormalizes. Throws InvalidQuaternion otherwise.
  static UnitQuat from_wxyz(double w, double x, double y, double z, double tolerance = 1e-6);

  /// Normalizes any non-zero (w, x, y, z). Throws InvalidQuaternion on zero.
  static UnitQuat normalized(double w, double x, double y, double z);

  static UnitQuat from_axis_angle(const Vec3& axis, double angle_deg);

  /// Extrinsic rotation: world X by `x_deg`, then world Y, then world Z.
  static UnitQuat from_euler(double x_deg, double y_deg, double z_deg);

  /// Shortest-arc rotation taking direction `from` onto direction `to`.
  static UnitQuat between(const Vec3& from, const Vec3& to);

  [[nodiscard]] constexpr double w() const { return w_; }
  [[nodiscard]] constexpr double x() const { return x_; }
  [[nodiscard]] constexpr double y() const { return y_; }
  [[nodiscard]] constexpr double z() const { return z_; }

  [[nodiscard]] UnitQuat inverse() const;
  [[nodiscard]] Vec3 rotate(const Vec3& v) const;

  /// Rotation angle in degrees, [0, 180].
  [[nodiscard]] double angle_deg() const;

  /// Hamilton product `lhs * rhs` (apply rhs first).
  friend UnitQuat operator*(const UnitQuat& lhs, const UnitQuat& rhs);

  /// Component-wise; both sides are canonical, so equal rotations compare equal.
  bool operator==(const UnitQuat&) const = default;

 private:
  constexpr UnitQuat(double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {}

  double w_ = 1.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

struct Pose {
  Vec3 position;
  UnitQuat orientation;

  bool operator==(const Pose&) const = default;
};

/// Tool-local axis the drill spins about: +Y, from the tip toward the handle.
inline constexpr Vec3 kToolAxis = kUnitY;

struct EulerAngles {
  double x_deg = 0.0;
  double y_deg = 0.0;
  double z_deg = 0.0;
  /// Middle angle within 1e-6 deg of +-90; `z_deg` is then forced to 0.
  bool gimbal_lock = false;
};

struct SwingTwist {
  double swing_deg = 0.0;
  /// Signed about the decomposition axis, (-180, 180].
  double twist_deg = 0.0;
  UnitQuat swing;
  UnitQuat twist;
};

struct Magnitudes {
  double pem = 0.0;
  double aem = 0.0;
};

/// Full error of a tool pose against a target pose.
struct ErrorState {
  Vec3 pe;
  double pem = 0.0;
  UnitQuat ae;
  double aem = 0.0;
  EulerAngles ae_euler;
  double swing_deg = 0.0;
  double twist_deg = 0.0;
};

/// Drill tip minus target, world frame.
Vec3 positional_error(const Vec3& tool_position, const Vec3& target_position);

/// tool * target^-1, canonicalized.
UnitQuat angular_error(const UnitQuat& tool_orientation, const UnitQuat& target_orientation);

Magnitudes magnitudes(const Vec3& pe, const UnitQuat& ae);

/// Extrinsic world X-Y-Z decomposition, degrees. x and z in (-180, 180], y in [-90, 90].
EulerAngles euler_components(const UnitQuat& q);

/// Factor q = swing * twist where twist rotates about `axis`.
/// Throws std::invalid_argument for a zero axis.
SwingTwist swing_twist(const UnitQuat& q, const Vec3& axis);

/// Everything logged per trial. Swing/twist are taken about the target's
/// world-frame tool axis, so swing is the angle between drill and target axes.
ErrorState compute_error(const Pose& tool, const Pose& target, const Vec3& tool_axis = kToolAxis);

/// Angle in degrees between two non-zero directions.
double angle_between_deg(const Vec3& a, const Vec3& b);

double wrap_degrees(double deg);

}  // namespace collimator
