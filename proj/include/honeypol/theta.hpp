#pragma once

#include <array>

#include "honeypol/geometry.hpp"
#include "honeypol/lattice.hpp"

namespace honeypol {

/// Scale alpha of the Gaussian phi_alpha(r^2) = exp(-pi * alpha * r^2).
class GaussianParam {
 public:
  /// Throws DomainError unless alpha is positive and finite.
  explicit GaussianParam(double alpha);
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Truncation contract for every lattice series: enumerate the integer box
/// max(|k|, |l|) <= K, doubling K from start_halfwidth until the certified
/// tail drops below abs_tol, never beyond max_halfwidth.
struct SumBudget {
  double abs_tol = 1e-10;
  int start_halfwidth = 8;
  int max_halfwidth = 4096;

  /// Throws DomainError when the invariants do not hold.
  void validate() const;
};

struct SumValue {
  double value = 0.0;
  int halfwidth_used = 0;
  /// Upper bound on the mass of the omitted terms.
  double tail_bound = 0.0;
  /// Floating-point error estimate of the accumulated terms.
  double rounding_bound = 0.0;
};

/// Real part of a dual-lattice series together with its (analytically zero)
/// imaginary part, accumulated separately.
struct DualSumValue {
  SumValue real;
  double imaginary = 0.0;
};

/// sum_n sum_{lambda} phi_alpha(|lambda + x_n - z|^2) by direct enumeration.
/// Throws TruncationError when the budget cannot certify abs_tol.
SumValue gaussian_config_sum(const PeriodicConfiguration &config, const Vec2 &z,
                             GaussianParam alpha, const SumBudget &budget = {});

/// sum_{(k,l)} exp(-(2 pi alpha / sqrt3) Q(k - u, l - v)), Q(x, y) = x^2 + xy + y^2.
/// This is the hexagonal lattice sum at density one centered at B(u, v).
SumValue hex_form_sum(GaussianParam alpha, const std::array<Rational, 2> &shift,
                      const SumBudget &budget = {});

/// Poisson-dual evaluation of sum_{lambda} phi_alpha(|lambda - z|^2):
/// (1/vol) sum_{xi in dual} alpha^{-1} phi_{1/alpha}(|xi|^2) exp(2 pi i xi.z).
/// Throws ConsistencyError when the imaginary part exceeds abs_tol.
DualSumValue gaussian_dual_sum(const Lattice2 &lattice, const Vec2 &z, GaussianParam alpha,
                               const SumBudget &budget = {});

/// Same for a periodic configuration (sum over its shifts).
DualSumValue gaussian_dual_sum(const PeriodicConfiguration &config, const Vec2 &z,
                               GaussianParam alpha, const SumBudget &budget = {});

/// Gradient in z of gaussian_config_sum over the same enumeration box.
Vec2 gaussian_sum_gradient(const PeriodicConfiguration &config, const Vec2 &z,
                           GaussianParam alpha, const SumBudget &budget = {});

/// Upper bound on sum exp(-pi alpha (v - s)^T G (v - s)) over integer v outside
/// the box max(|v_1|, |v_2|) <= halfwidth, where s = shift. Returns +inf when
/// the bound does not converge (small alpha relative to the box).
double certified_tail_bound(GaussianParam alpha, const Mat2 &gram, int halfwidth,
                            const Vec2 &shift);

}  // namespace honeypol
