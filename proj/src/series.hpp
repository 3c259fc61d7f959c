#pragma once

// Internal summation kernels shared by the theta engine, the cubic AGM series
// and the polarization objective. Templated on the accumulation type so the
// objective can run in long double where values leave the double range.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "honeypol/errors.hpp"
#include "honeypol/lattice.hpp"
#include "honeypol/theta.hpp"

namespace honeypol::detail {

/// Neumaier compensated sum plus a running rounding-error weight.
template <class Real>
class Accumulator {
 public:
  void add(Real term, Real error_weight) {
    const Real t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
    weight_ += std::abs(term) * error_weight;
  }
  Real value() const { return sum_ + comp_; }
  Real rounding_bound() const {
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    return eps * (2 * std::abs(value()) + weight_);
  }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
  Real weight_ = 0;
};

inline double min_eigenvalue(const Mat2 &sym) {
  const double mean = 0.5 * (sym.m11 + sym.m22);
  const double half_diff = 0.5 * (sym.m11 - sym.m22);
  return mean - std::hypot(half_diff, sym.m12);
}

/// log of the geometric-domination bound on
/// sum_{m > K} 8 m exp(-c mu (m - sigma)^2), which dominates the omitted mass
/// of exp(-c v^T G v) outside the box, mu the smallest eigenvalue of G and
/// sigma the sup-norm of the shift.
inline double log_tail_bound(double c, double mu, int halfwidth, double sigma) {
  const double m = halfwidth + 1.0;
  const double r = m - sigma;
  if (r <= 0.0 || !(c * mu > 0.0)) return std::numeric_limits<double>::infinity();
  const double a = c * mu;
  // ratio of consecutive shell bounds, decreasing in m
  const double log_ratio = std::log1p(1.0 / m) - a * (2.0 * r + 1.0);
  if (log_ratio >= 0.0) return std::numeric_limits<double>::infinity();
  return std::log(8.0 * m) - a * r * r - std::log(-std::expm1(log_ratio));
}

template <class Real>
Real bound_from_log(double log_bound) {
  if (log_bound == std::numeric_limits<double>::infinity()) {
    return std::numeric_limits<Real>::infinity();
  }
  const Real b = std::exp(static_cast<Real>(log_bound));
  return std::max(b, std::numeric_limits<Real>::denorm_min());
}

/// f - round(f) componentwise, in [-1/2, 1/2].
inline Vec2 centered_fraction(const Vec2 &f) {
  return {f.x - std::nearbyint(f.x), f.y - std::nearbyint(f.y)};
}

/// Smallest K in the doubling schedule whose log tail (including any
/// prefactor) is below log(abs_tol). Throws TruncationError at the cap.
inline int choose_halfwidth(const SumBudget &budget, const std::function<double(int)> &log_tail,
                            double *log_tail_out) {
  budget.validate();
  const double target = std::log(budget.abs_tol);
  int k = budget.start_halfwidth;
  for (;;) {
    const double lt = log_tail(k);
    if (lt < target) {
      if (log_tail_out) *log_tail_out = lt;
      return k;
    }
    if (k >= budget.max_halfwidth) {
      throw TruncationError("series budget exhausted at halfwidth " + std::to_string(k),
                            std::exp(lt));
    }
    k = std::min(2 * k, budget.max_halfwidth);
  }
}

template <class Real>
struct FieldSample {
  Real value = 0;
  Real grad_x = 0;
  Real grad_y = 0;
  Real imaginary = 0;
  Real rounding = 0;
};

/// Visits exp(-(a l^2 + b l + c)) for l in [-K, K], a > 0, by multiplicative
/// recurrences running outward from the vertex, so every ratio is at most 1.
/// fn(l, term, steps) receives the number of recurrence steps taken. A run
/// stops once terms fall below the smallest normal number; the return value
/// bounds the mass skipped that way.
template <class Real, class Fn>
Real quadratic_row(Real a, Real b, Real c, int halfwidth, Fn &&fn) {
  constexpr Real kTiny = std::numeric_limits<Real>::min();
  const Real vertex = -b / (2 * a);
  const int lc = static_cast<int>(std::nearbyint(std::clamp<Real>(vertex, -halfwidth, halfwidth)));
  const Real t0 = std::exp(-((a * lc + b) * lc + c));
  if (t0 < kTiny) return t0 * (2 * halfwidth + 1);
  const Real step = std::exp(-2 * a);
  Real skipped = 0;
  fn(lc, t0, 0);
  Real t = t0;
  Real up = 0;
  if (lc < halfwidth) {
    up = std::exp(-(a * (2 * lc + 1) + b));
    Real r = up;
    for (int l = lc + 1; l <= halfwidth; ++l) {
      t *= r;
      r *= step;
      if (t < kTiny) {
        skipped += t * (halfwidth - l + 1);
        break;
      }
      fn(l, t, l - lc);
    }
  }
  if (lc == -halfwidth) return skipped;
  t = t0;
  // the two first ratios multiply to exp(-2a)
  Real r = up > 0 ? step / up : std::exp(-(a * (1 - 2 * lc) - b));
  for (int l = lc - 1; l >= -halfwidth; --l) {
    t *= r;
    r *= step;
    if (t < kTiny) {
      skipped += t * (l + halfwidth + 1);
      break;
    }
    fn(l, t, lc - l);
  }
  return skipped;
}

/// Direct enumeration of sum_n sum_{|k|,|l| <= K} exp(-pi alpha |B(k, l) + x_n - z|^2)
/// and its z-gradient.
template <class Real>
FieldSample<Real> direct_field(const PeriodicConfiguration &config, const Vec2 &z,
                               double alpha, int halfwidth, bool want_grad) {
  const Mat2 &bm = config.lattice().basis();
  const Real b11 = bm.m11, b12 = bm.m12, b21 = bm.m21, b22 = bm.m22;
  const Real c = std::numbers::pi_v<Real> * static_cast<Real>(alpha);
  const Real qq = b12 * b12 + b22 * b22;
  Accumulator<Real> val, gx, gy;
  Real skipped = 0;
  for (const Vec2 &x : config.shifts()) {
    const Vec2 f = centered_fraction(config.lattice().to_fractional(x - z));
    const Real fx = f.x, fy = f.y;
    for (int k = -halfwidth; k <= halfwidth; ++k) {
      const Real vk = k + fx;
      // y(l) = p + l q, q the second generator
      const Real px = b11 * vk + b12 * fy;
      const Real py = b21 * vk + b22 * fy;
      skipped += quadratic_row<Real>(c * qq, 2 * c * (px * b12 + py * b22), c * (px * px + py * py),
                          halfwidth, [&](int l, Real t, int steps) {
                            const Real err = 4 + 3 * steps;
                            val.add(t, err);
                            if (want_grad) {
                              const Real yx = px + l * b12;
                              const Real yy = py + l * b22;
                              gx.add(2 * c * yx * t, err + 2);
                              gy.add(2 * c * yy * t, err + 2);
                            }
                          });
    }
  }
  FieldSample<Real> s;
  s.value = val.value();
  s.rounding = val.rounding_bound() + skipped;
  if (want_grad) {
    s.grad_x = gx.value();
    s.grad_y = gy.value();
  }
  return s;
}

/// cos(j theta), sin(j theta) for |j| <= K by repeated rotation.
template <class Real>
void phase_table(Real theta, int halfwidth, std::vector<Real> &cs, std::vector<Real> &sn) {
  const auto mid = static_cast<std::size_t>(halfwidth);
  const Real c1 = std::cos(theta);
  const Real s1 = std::sin(theta);
  cs[mid] = 1;
  sn[mid] = 0;
  for (std::size_t j = 1; j <= mid; ++j) {
    cs[mid + j] = cs[mid + j - 1] * c1 - sn[mid + j - 1] * s1;
    sn[mid + j] = sn[mid + j - 1] * c1 + cs[mid + j - 1] * s1;
    cs[mid - j] = cs[mid + j];
    sn[mid - j] = -sn[mid + j];
  }
}

/// Poisson-dual form of direct_field:
/// (1/(vol alpha)) sum_n sum_{xi} exp(-pi |xi|^2 / alpha) exp(2 pi i xi.(x_n - z)),
/// xi = B^{-T}(k, l). With include_origin = false the xi = 0 term (the
/// mean field N / (vol alpha)) is left out.
template <class Real>
FieldSample<Real> dual_field(const PeriodicConfiguration &config, const Vec2 &z, double alpha,
                             int halfwidth, bool include_origin, bool want_grad) {
  const Mat2 d = config.lattice().basis().inverse().transpose();
  const Real d11 = d.m11, d12 = d.m12, d21 = d.m21, d22 = d.m22;
  const Real pi = std::numbers::pi_v<Real>;
  const Real c = pi / static_cast<Real>(alpha);
  const Real two_pi = 2 * pi;
  const Real qq = d12 * d12 + d22 * d22;
  // exp(2 pi i j f) for |j| <= K, per axis; a term's phase factor is a product
  const auto width = static_cast<std::size_t>(2 * halfwidth + 1);
  std::vector<Real> cx(width), sx(width), cy(width), sy(width);
  Accumulator<Real> re, im, gx, gy;
  Real skipped = 0;
  for (const Vec2 &x : config.shifts()) {
    const Vec2 f = centered_fraction(config.lattice().to_fractional(x - z));
    const Real fx = f.x, fy = f.y;
    phase_table(two_pi * fx, halfwidth, cx, sx);
    phase_table(two_pi * fy, halfwidth, cy, sy);
    for (int k = -halfwidth; k <= halfwidth; ++k) {
      const Real px = d11 * k;
      const Real py = d21 * k;
      const Real ck = cx[static_cast<std::size_t>(k + halfwidth)];
      const Real sk = sx[static_cast<std::size_t>(k + halfwidth)];
      skipped += quadratic_row<Real>(c * qq, 2 * c * (px * d12 + py * d22), c * (px * px + py * py),
                          halfwidth, [&](int l, Real w, int steps) {
                            if (!include_origin && k == 0 && l == 0) return;
                            const auto i = static_cast<std::size_t>(l + halfwidth);
                            const Real cs = ck * cy[i] - sk * sy[i];
                            const Real sn = sk * cy[i] + ck * sy[i];
                            const Real err = 9 + 3 * steps + 4 * (std::abs(k) + std::abs(l));
                            re.add(w * cs, err);
                            im.add(w * sn, err);
                            if (want_grad) {
                              // d/dz cos(2 pi xi.(x - z)) = 2 pi xi sin(...)
                              const Real xx = px + l * d12;
                              const Real xy = py + l * d22;
                              gx.add(two_pi * xx * w * sn, err + 2);
                              gy.add(two_pi * xy * w * sn, err + 2);
                            }
                          });
    }
  }
  const Real pref = 1 / (static_cast<Real>(config.lattice().covolume()) * static_cast<Real>(alpha));
  FieldSample<Real> s;
  s.value = pref * re.value();
  s.imaginary = pref * im.value();
  s.rounding = pref * (re.rounding_bound() + skipped);
  if (want_grad) {
    s.grad_x = pref * gx.value();
    s.grad_y = pref * gy.value();
  }
  return s;
}

/// log of the tail bound for direct_field at halfwidth K (all shifts, any z).
inline double direct_log_tail(const PeriodicConfiguration &config, double alpha, int halfwidth) {
  const double mu = min_eigenvalue(config.lattice().gram());
  return std::log(static_cast<double>(config.size())) +
         log_tail_bound(std::numbers::pi * alpha, mu, halfwidth, 0.5);
}

/// log of the tail bound for dual_field at halfwidth K.
inline double dual_log_tail(const PeriodicConfiguration &config, double alpha, int halfwidth) {
  const double mu = min_eigenvalue(config.lattice().gram().inverse());
  const double pref = static_cast<double>(config.size()) /
                      (config.lattice().covolume() * alpha);
  return std::log(pref) + log_tail_bound(std::numbers::pi / alpha, mu, halfwidth, 0.0);
}

}  // namespace honeypol::detail
