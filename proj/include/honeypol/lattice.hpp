#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "honeypol/geometry.hpp"

namespace honeypol {

using Rational = boost::rational<std::int64_t>;

/// Integer 2x2 matrix; used for unimodular basis changes.
struct IntMat2 {
  std::int64_t m11 = 1, m12 = 0;
  std::int64_t m21 = 0, m22 = 1;
};

/// Full-rank planar lattice B * Z^2. Immutable.
class Lattice2 {
 public:
  /// Throws DomainError if the basis is singular or not finite.
  static Lattice2 from_basis(const Mat2 &basis);

  const Mat2 &basis() const noexcept { return basis_; }
  Vec2 generator(int j) const { return basis_.col(j); }
  /// |det(basis)|, the area of a fundamental cell.
  double covolume() const noexcept { return covolume_; }
  /// Points per unit area, 1 / covolume.
  double density() const noexcept { return 1.0 / covolume_; }
  /// B^T B.
  Mat2 gram() const;

  Vec2 to_fractional(const Vec2 &p) const { return inverse_ * p; }
  Vec2 to_cartesian(const Vec2 &f) const { return basis_ * f; }

  Lattice2 scaled(double factor) const;

  /// True if every fractional coordinate of p is within tol of an integer.
  bool contains(const Vec2 &p, double tol = 1e-9) const;

 private:
  Lattice2(const Mat2 &basis, const Mat2 &inverse, double covolume)
      : basis_(basis), inverse_(inverse), covolume_(covolume) {}

  Mat2 basis_;
  Mat2 inverse_;
  double covolume_;
};

/// Union of N shifted copies of one lattice. shifts[m] - shifts[n] is never a
/// lattice vector for m != n.
class PeriodicConfiguration {
 public:
  /// Throws ValidationError naming the offending pair when two shifts are
  /// congruent modulo the lattice, or when the shift list is empty.
  static PeriodicConfiguration create(Lattice2 lattice, std::vector<Vec2> shifts);
  /// The lattice itself as an N = 1 configuration.
  static PeriodicConfiguration single(Lattice2 lattice);

  const Lattice2 &lattice() const noexcept { return lattice_; }
  std::span<const Vec2> shifts() const noexcept { return shifts_; }
  std::size_t size() const noexcept { return shifts_.size(); }
  double density() const noexcept {
    return static_cast<double>(shifts_.size()) / lattice_.covolume();
  }

  PeriodicConfiguration scaled(double factor) const;

 private:
  PeriodicConfiguration(Lattice2 lattice, std::vector<Vec2> shifts)
      : lattice_(lattice), shifts_(std::move(shifts)) {}

  Lattice2 lattice_;
  std::vector<Vec2> shifts_;
};

/// Canonical representative of a point modulo a lattice.
struct TorusPoint {
  Vec2 coords;       // basis * fractional
  Vec2 fractional;   // each component in [0, 1)
  Mat2 lattice_basis;  // the lattice it was reduced modulo
};

/// Result of 2D Lagrange (Gauss) reduction: reduced = basis * transform.
struct ReducedBasis {
  Mat2 reduced;
  IntMat2 transform;
};

ReducedBasis lagrange_reduce(const Lattice2 &lattice);

/// Hexagonal lattice of the given density, basis
/// rho^{-1/2} sqrt(2/sqrt3) [[1, 1/2], [0, sqrt3/2]].
Lattice2 hexagonal_lattice(double density);

/// Honeycomb structure of the given density: the hexagonal lattice scaled by
/// sqrt(2) together with its translate by the scaled deep hole.
PeriodicConfiguration honeycomb(double density);

/// True when the Lagrange-reduced Gram matrix is proportional to
/// [[1, 1/2], [1/2, 1]] within the relative tolerance.
bool is_hexagonal(const Lattice2 &lattice, double rel_tol = 1e-9);

/// Exact fractional coordinates (in the lattice's own basis) of the two
/// inequivalent deep holes of a hexagonal lattice, sorted lexicographically.
/// Throws UnsupportedGeometryError for non-hexagonal lattices.
std::array<std::array<Rational, 2>, 2> deep_hole_fractions(const Lattice2 &lattice);

/// The two inequivalent deep holes of a hexagonal lattice.
std::vector<TorusPoint> deep_holes(const Lattice2 &lattice);

/// Inverse-transpose basis.
Lattice2 dual_lattice(const Lattice2 &lattice);

TorusPoint reduce_to_torus(const Lattice2 &lattice, const Vec2 &point);

/// Distance between p and q in the quotient R^2 / lattice.
double torus_distance(const Lattice2 &lattice, const Vec2 &p, const Vec2 &q);

/// True when every column of `a` is an integer combination of the columns of
/// `b` (coefficients within tol of integers).
bool generators_in_lattice(const Mat2 &a, const Mat2 &b, double tol);

}  // namespace honeypol
