#pragma once

#include <array>
#include <cmath>

namespace qgeo {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Global geometric tolerance. All inexactness decisions in the library go
// through comparisons against this value, so a stricter numeric backend could
// be swapped in behind them. Default 1e-9, overridable via QG_TOLERANCE or
// setGeomTolerance().
double geomTolerance();
void setGeomTolerance(double tol);

struct Vec2 {
  double x = 0., y = 0.;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalize(Vec2 a) {
  double n = norm(a);
  return n > 0 ? a / n : Vec2{0, 0};
}
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; } // rotate +90deg
inline Vec2 rotate(Vec2 v, double ang) {
  double c = std::cos(ang), s = std::sin(ang);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Angle of v in [0, 2pi).
inline double angleOf(Vec2 v) {
  double a = std::atan2(v.y, v.x);
  return a < 0 ? a + kTwoPi : a;
}

// Wrap a into [0, period).
inline double wrapAngle(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0) r += period;
  if (r >= period) r -= period; // fmod can land exactly on period
  return r;
}

// Counterclockwise angle from direction a to direction b, in [0, 2pi).
inline double ccwAngle(Vec2 a, Vec2 b) {
  return wrapAngle(std::atan2(cross(a, b), dot(a, b)), kTwoPi);
}

struct Vec3 {
  double x = 0., y = 0., z = 0.;
  Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

} // namespace qgeo
