#pragma once

#include <cstdint>

#include "honeypol/lattice.hpp"
#include "honeypol/theta.hpp"

namespace honeypol {

/// Real nome q in (0, 1).
class Nome {
 public:
  /// Throws DomainError unless 0 < q < 1.
  explicit Nome(double q);
  /// q = exp(-2 pi alpha / sqrt3).
  static Nome from_alpha(GaussianParam alpha);
  double q() const noexcept { return q_; }
  /// -log(q) > 0.
  double log_inverse() const noexcept { return log_inverse_; }
  Nome cubed() const;

 private:
  Nome(double q, double log_inverse) : q_(q), log_inverse_(log_inverse) {}
  double q_;
  double log_inverse_;
};

/// a(q) = sum_{(k,l)} q^(k^2 + kl + l^2).
SumValue agm_a(Nome q, const SumBudget &budget = {});

/// b(q) = sum_{(k,l)} q^(k^2 + kl + l^2) cos(2 pi (k - l) / 3); the cosine is
/// exactly 1 when k = l (mod 3) and -1/2 otherwise.
SumValue agm_b(Nome q, const SumBudget &budget = {});

/// The cubic weight cos(2 pi (k - l) / 3) as an exact value.
constexpr double cubic_character(std::int64_t k, std::int64_t l) {
  return ((k - l) % 3 == 0) ? 1.0 : -0.5;
}

struct IdentityResidual {
  double residual = 0.0;     // 3 a(q^3) - a(q) - 2 b(q)
  double tail_bound = 0.0;   // 3 t(a(q^3)) + t(a(q)) + 2 t(b(q))
  double rounding_bound = 0.0;
};

IdentityResidual cubic_identity_residual(Nome q, const SumBudget &budget = {});

/// g(s) = 3 s^5 - 3 s^2 - s + 1 and g'(s) = 15 s^4 - 6 s - 1.
double poly_g(double s);
double poly_g_prime(double s);
Rational poly_g(const Rational &s);
Rational poly_g_prime(const Rational &s);

struct ThresholdSet {
  double alpha_direct;  // 3 sqrt3 log2 / (2 pi)
  double alpha_dual;    // 2 pi / (3 sqrt3 log2)
  double alpha_agm;     // sqrt3 log5 / pi
};

ThresholdSet thresholds();

/// Both per-term comparisons at x > 0. Margins are reported as
/// lhs - rhs together with a reduced form whose sign equals the sign of the
/// margin but which does not underflow for large x.
struct CrossoverReport {
  double x = 0.0;
  // exp(-x) versus 2 exp(-2x)
  double direct_lhs = 0.0;
  double direct_rhs = 0.0;
  double direct_margin = 0.0;
  double direct_reduced = 0.0;  // 1 - 2 exp(-x)
  bool direct_holds = false;
  // 3 exp(-3x) - exp(-x) versus 3 exp(-3x/2) - exp(-x/2); margin = s g(s), s = exp(-x/2)
  double agm_lhs = 0.0;
  double agm_rhs = 0.0;
  double agm_margin = 0.0;
  double agm_reduced = 0.0;  // g(s)
  bool agm_holds = false;
};

CrossoverReport per_term_crossover(double x);

}  // namespace honeypol
