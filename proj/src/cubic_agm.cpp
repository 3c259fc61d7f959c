#include "honeypol/cubic_agm.hpp"

#include <cmath>
#include <numbers>

#include "honeypol/errors.hpp"
#include "series.hpp"

namespace honeypol {
namespace {

// sum_{(k,l)} weight(k, l) exp(-L Q(k, l)); Q has smallest Gram eigenvalue 1/2.
template <class Weight>
SumValue form_series(double log_inverse, const SumBudget &budget, Weight weight) {
  double log_tail = 0.0;
  const int k = detail::choose_halfwidth(
      budget, [&](int h) { return detail::log_tail_bound(log_inverse, 0.5, h, 0.0); },
      &log_tail);
  detail::Accumulator<double> acc;
  for (int i = -k; i <= k; ++i) {
    for (int j = -k; j <= k; ++j) {
      const double e = log_inverse * static_cast<double>(i * i + i * j + j * j);
      acc.add(weight(i, j) * std::exp(-e), 3.0 + e);
    }
  }
  return {acc.value(), k, detail::bound_from_log<double>(log_tail), acc.rounding_bound()};
}

}  // namespace

Nome::Nome(double q) : q_(q), log_inverse_(-std::log(q)) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("nome must lie in (0, 1)");
}

Nome Nome::from_alpha(GaussianParam alpha) {
  const double l = 2.0 * std::numbers::pi * alpha.alpha() / std::numbers::sqrt3;
  const double q = std::exp(-l);
  if (!(q > 0.0 && q < 1.0)) throw DomainError("nome underflows for this alpha");
  return Nome(q, l);
}

Nome Nome::cubed() const {
  const double l = 3.0 * log_inverse_;
  const double q = std::exp(-l);
  if (!(q > 0.0)) throw DomainError("cubed nome underflows");
  return Nome(q, l);
}

SumValue agm_a(Nome q, const SumBudget &budget) {
  return form_series(q.log_inverse(), budget, [](int, int) { return 1.0; });
}

SumValue agm_b(Nome q, const SumBudget &budget) {
  return form_series(q.log_inverse(), budget,
                     [](int k, int l) { return cubic_character(k, l); });
}

IdentityResidual cubic_identity_residual(Nome q, const SumBudget &budget) {
  const SumValue a3 = agm_a(q.cubed(), budget);
  const SumValue a1 = agm_a(q, budget);
  const SumValue b1 = agm_b(q, budget);
  const double eps = std::numeric_limits<double>::epsilon();
  const double r = 3.0 * a3.value - a1.value - 2.0 * b1.value;
  IdentityResidual out;
  out.residual = r;
  out.tail_bound = 3.0 * a3.tail_bound + a1.tail_bound + 2.0 * b1.tail_bound;
  out.rounding_bound = 3.0 * a3.rounding_bound + a1.rounding_bound + 2.0 * b1.rounding_bound +
                       4.0 * eps * (3.0 * a3.value + a1.value + 2.0 * std::abs(b1.value));
  return out;
}

double poly_g(double s) { return ((3.0 * s * s * s - 3.0) * s - 1.0) * s + 1.0; }

double poly_g_prime(double s) { return (15.0 * s * s * s - 6.0) * s - 1.0; }

Rational poly_g(const Rational &s) {
  const Rational s2 = s * s;
  return Rational(3) * s2 * s2 * s - Rational(3) * s2 - s + Rational(1);
}

Rational poly_g_prime(const Rational &s) {
  const Rational s2 = s * s;
  return Rational(15) * s2 * s2 - Rational(6) * s - Rational(1);
}

ThresholdSet thresholds() {
  constexpr double pi = std::numbers::pi;
  constexpr double sqrt3 = std::numbers::sqrt3;
  constexpr double ln2 = std::numbers::ln2;
  const double ln5 = std::log(5.0);
  return {3.0 * sqrt3 * ln2 / (2.0 * pi), 2.0 * pi / (3.0 * sqrt3 * ln2), sqrt3 * ln5 / pi};
}

CrossoverReport per_term_crossover(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("x must be positive");
  CrossoverReport r;
  r.x = x;
  r.direct_lhs = std::exp(-x);
  r.direct_rhs = 2.0 * std::exp(-2.0 * x);
  r.direct_margin = r.direct_lhs - r.direct_rhs;
  r.direct_reduced = 1.0 - 2.0 * std::exp(-x);
  r.direct_holds = r.direct_reduced > 0.0;

  const double s = std::exp(-0.5 * x);
  r.agm_lhs = 3.0 * std::exp(-3.0 * x) - std::exp(-x);
  r.agm_rhs = 3.0 * std::exp(-1.5 * x) - s;
  r.agm_margin = r.agm_lhs - r.agm_rhs;
  r.agm_reduced = poly_g(s);
  r.agm_holds = r.agm_reduced > 0.0;
  return r;
}

}  // namespace honeypol
