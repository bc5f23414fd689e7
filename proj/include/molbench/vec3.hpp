//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_VEC3_HPP
#define MOLBENCH_VEC3_HPP

#include <cmath>
#include <optional>

namespace molbench {

/// Cartesian position or displacement in Angstrom.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

inline constexpr double kDegPerRad = 180.0 / 3.14159265358979323846;

/// Geometric primitives below return nullopt for degenerate inputs
/// (coincident or collinear atoms) instead of a meaningless angle.
inline constexpr double kDegenerateNorm = 1e-9;

/// Bond angle at vertex b, in degrees within [0, 180].
inline std::optional<double> try_bond_angle_deg(Vec3 a, Vec3 b, Vec3 c) {
  const Vec3 u = a - b;
  const Vec3 v = c - b;
  if (norm(u) < kDegenerateNorm || norm(v) < kDegenerateNorm)
    return std::nullopt;
  // atan2 form is stable near 0 and 180 degrees where acos is not.
  return std::atan2(norm(cross(u, v)), dot(u, v)) * kDegPerRad;
}

/// Signed dihedral of the path a-b-c-d, in degrees within (-180, 180].
inline std::optional<double> try_dihedral_deg(Vec3 a, Vec3 b, Vec3 c, Vec3 d) {
  const Vec3 b1 = b - a;
  const Vec3 b2 = c - b;
  const Vec3 b3 = d - c;
  const Vec3 n1 = cross(b1, b2);
  const Vec3 n2 = cross(b2, b3);
  const double b2n = norm(b2);
  if (norm(n1) < kDegenerateNorm || norm(n2) < kDegenerateNorm ||
      b2n < kDegenerateNorm)
    return std::nullopt;
  const double y = dot(cross(n1, n2), (1.0 / b2n) * b2);
  const double x = dot(n1, n2);
  double phi = std::atan2(y, x) * kDegPerRad;
  if (phi <= -180.0)
    phi = 180.0;
  return phi;
}

} // namespace molbench

#endif // MOLBENCH_VEC3_HPP
