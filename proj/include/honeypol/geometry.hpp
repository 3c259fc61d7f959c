#pragma once

#include <cmath>

namespace honeypol {

/// Point or vector in the plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 &operator+=(const Vec2 &o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 &operator-=(const Vec2 &o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2 &a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, const Vec2 &a) {
    return {s * a.x, s * a.y};
  }
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

constexpr double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2 &a) { return std::hypot(a.x, a.y); }
constexpr double norm2(const Vec2 &a) { return dot(a, a); }

/// 2x2 real matrix, row-major storage. As a lattice basis the columns are the
/// generators: b1 = (m11, m21), b2 = (m12, m22).
struct Mat2 {
  double m11 = 0.0, m12 = 0.0;
  double m21 = 0.0, m22 = 0.0;

  constexpr double det() const { return m11 * m22 - m12 * m21; }
  constexpr Vec2 col(int j) const { return j == 0 ? Vec2{m11, m21} : Vec2{m12, m22}; }
  constexpr Mat2 transpose() const { return {m11, m21, m12, m22}; }

  /// Caller guarantees det() != 0.
  constexpr Mat2 inverse() const {
    const double d = det();
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
  }

  constexpr Vec2 operator*(const Vec2 &v) const {
    return {m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y};
  }
  constexpr Mat2 operator*(const Mat2 &o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
  friend constexpr Mat2 operator*(double s, const Mat2 &a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
  }
  friend constexpr bool operator==(const Mat2 &, const Mat2 &) = default;

  static constexpr Mat2 from_columns(const Vec2 &b1, const Vec2 &b2) {
    return {b1.x, b2.x, b1.y, b2.y};
  }
};

/// 90 degree rotation (x, y) -> (y, -x).
inline constexpr Mat2 kRotationJ{0.0, 1.0, -1.0, 0.0};

}  // namespace honeypol
