#include "honeypol/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "honeypol/errors.hpp"

namespace honeypol {
namespace {

bool near_integer(double c, double tol) { return std::abs(c - std::nearbyint(c)) <= tol; }

// Snap values that are integers up to rounding so that generators reduce to 0.
double snap(double c) {
  const double r = std::nearbyint(c);
  return std::abs(c - r) <= 1e-12 * std::max(1.0, std::abs(c)) ? r : c;
}

double unit_fraction(double c) {
  double f = c - std::floor(c);
  if (f >= 1.0) f = 0.0;
  return f;
}

Rational unit_fraction(const Rational &r) {
  // boost::rational keeps den > 0
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return r - Rational(q);
}

}  // namespace

Lattice2 Lattice2::from_basis(const Mat2 &basis) {
  const double d = basis.det();
  if (!std::isfinite(basis.m11) || !std::isfinite(basis.m12) ||
      !std::isfinite(basis.m21) || !std::isfinite(basis.m22) || !std::isfinite(d)) {
    throw DomainError("lattice basis must be finite");
  }
  const double scale = std::max({std::abs(basis.m11), std::abs(basis.m12),
                                 std::abs(basis.m21), std::abs(basis.m22)});
  if (d == 0.0 || std::abs(d) <= 1e-14 * scale * scale) {
    throw DomainError("lattice basis is singular");
  }
  return Lattice2(basis, basis.inverse(), std::abs(d));
}

Mat2 Lattice2::gram() const { return basis_.transpose() * basis_; }

Lattice2 Lattice2::scaled(double factor) const { return from_basis(factor * basis_); }

bool Lattice2::contains(const Vec2 &p, double tol) const {
  const Vec2 f = to_fractional(p);
  return near_integer(f.x, tol) && near_integer(f.y, tol);
}

PeriodicConfiguration PeriodicConfiguration::create(Lattice2 lattice,
                                                    std::vector<Vec2> shifts) {
  if (shifts.empty()) throw ValidationError("configuration needs at least one shift");
  for (std::size_t m = 0; m < shifts.size(); ++m) {
    if (!std::isfinite(shifts[m].x) || !std::isfinite(shifts[m].y)) {
      std::ostringstream msg;
      msg << "shift " << m << " is not finite";
      throw ValidationError(msg.str());
    }
    for (std::size_t n = 0; n < m; ++n) {
      if (lattice.contains(shifts[m] - shifts[n])) {
        std::ostringstream msg;
        msg << "shifts " << n << " and " << m << " differ by a lattice vector";
        throw ValidationError(msg.str());
      }
    }
  }
  return PeriodicConfiguration(lattice, std::move(shifts));
}

PeriodicConfiguration PeriodicConfiguration::single(Lattice2 lattice) {
  return PeriodicConfiguration(lattice, {Vec2{0.0, 0.0}});
}

PeriodicConfiguration PeriodicConfiguration::scaled(double factor) const {
  std::vector<Vec2> s;
  s.reserve(shifts_.size());
  for (const Vec2 &x : shifts_) s.push_back(factor * x);
  return PeriodicConfiguration(lattice_.scaled(factor), std::move(s));
}

ReducedBasis lagrange_reduce(const Lattice2 &lattice) {
  Vec2 b1 = lattice.generator(0);
  Vec2 b2 = lattice.generator(1);
  IntMat2 u;
  auto swap_columns = [&] {
    std::swap(b1, b2);
    std::swap(u.m11, u.m12);
    std::swap(u.m21, u.m22);
  };
  if (norm2(b2) < norm2(b1)) swap_columns();
  for (int iter = 0; iter < 256; ++iter) {
    const double mu = std::nearbyint(dot(b1, b2) / norm2(b1));
    if (mu != 0.0) {
      const auto m = static_cast<std::int64_t>(mu);
      b2 -= mu * b1;
      u.m12 -= m * u.m11;
      u.m22 -= m * u.m21;
    }
    if (norm2(b2) >= norm2(b1)) break;
    swap_columns();
  }
  return {Mat2::from_columns(b1, b2), u};
}

Lattice2 hexagonal_lattice(double density) {
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw DomainError("density must be positive and finite");
  }
  const double s = std::sqrt(2.0 / std::sqrt(3.0)) / std::sqrt(density);
  return Lattice2::from_basis(s * Mat2{1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0});
}

PeriodicConfiguration honeycomb(double density) {
  const Lattice2 lattice = hexagonal_lattice(density).scaled(std::sqrt(2.0));
  const Vec2 hole = lattice.to_cartesian({1.0 / 3.0, 1.0 / 3.0});
  return PeriodicConfiguration::create(lattice, {Vec2{0.0, 0.0}, hole});
}

bool is_hexagonal(const Lattice2 &lattice, double rel_tol) {
  const Mat2 r = lagrange_reduce(lattice).reduced;
  const double a = norm2(r.col(0));
  const double c = norm2(r.col(1));
  const double b = dot(r.col(0), r.col(1));
  return std::abs(c - a) <= rel_tol * a && std::abs(std::abs(b) - 0.5 * a) <= rel_tol * a;
}

std::array<std::array<Rational, 2>, 2> deep_hole_fractions(const Lattice2 &lattice) {
  if (!is_hexagonal(lattice)) {
    throw UnsupportedGeometryError("deep holes are only available for hexagonal lattices");
  }
  ReducedBasis rb = lagrange_reduce(lattice);
  // Orient the reduced pair at 60 degrees so that the holes sit at (1/3, 1/3)
  // and (2/3, 2/3) of the reduced basis.
  if (dot(rb.reduced.col(0), rb.reduced.col(1)) < 0.0) {
    rb.transform.m12 = -rb.transform.m12;
    rb.transform.m22 = -rb.transform.m22;
  }
  const IntMat2 &u = rb.transform;
  const std::array<Rational, 2> first{unit_fraction(Rational(u.m11 + u.m12, 3)),
                                      unit_fraction(Rational(u.m21 + u.m22, 3))};
  const std::array<Rational, 2> second{unit_fraction(2 * first[0]),
                                       unit_fraction(2 * first[1])};
  std::array<std::array<Rational, 2>, 2> holes{first, second};
  std::sort(holes.begin(), holes.end());
  return holes;
}

std::vector<TorusPoint> deep_holes(const Lattice2 &lattice) {
  std::vector<TorusPoint> out;
  for (const auto &h : deep_hole_fractions(lattice)) {
    const Vec2 f{boost::rational_cast<double>(h[0]), boost::rational_cast<double>(h[1])};
    out.push_back({lattice.to_cartesian(f), f, lattice.basis()});
  }
  return out;
}

Lattice2 dual_lattice(const Lattice2 &lattice) {
  return Lattice2::from_basis(lattice.basis().inverse().transpose());
}

TorusPoint reduce_to_torus(const Lattice2 &lattice, const Vec2 &point) {
  const Vec2 f = lattice.to_fractional(point);
  const Vec2 frac{unit_fraction(snap(f.x)), unit_fraction(snap(f.y))};
  return {lattice.to_cartesian(frac), frac, lattice.basis()};
}

double torus_distance(const Lattice2 &lattice, const Vec2 &p, const Vec2 &q) {
  const Mat2 r = lagrange_reduce(lattice).reduced;
  Vec2 f = r.inverse() * (p - q);
  f = {f.x - std::nearbyint(f.x), f.y - std::nearbyint(f.y)};
  double best = norm(r * f);
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      best = std::min(best, norm(r * Vec2{f.x + i, f.y + j}));
    }
  }
  return best;
}

bool generators_in_lattice(const Mat2 &a, const Mat2 &b, double tol) {
  const Mat2 coeff = b.inverse() * a;
  return near_integer(coeff.m11, tol) && near_integer(coeff.m12, tol) &&
         near_integer(coeff.m21, tol) && near_integer(coeff.m22, tol);
}

}  // namespace honeypol
