#include "honeypol/theta.hpp"

#include <cmath>
#include <numbers>

#include "honeypol/errors.hpp"
#include "series.hpp"

namespace honeypol {

using detail::Accumulator;

namespace {

// r - round(r), exactly.
Rational centered(const Rational &r) {
  const Rational h = r + Rational(1, 2);
  std::int64_t fl = h.numerator() / h.denominator();
  if (h.numerator() % h.denominator() != 0 && h.numerator() < 0) --fl;
  return r - Rational(fl);
}

}  // namespace

GaussianParam::GaussianParam(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("Gaussian parameter alpha must be positive and finite");
  }
}

void SumBudget::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("abs_tol must be positive");
  }
  if (start_halfwidth < 1 || start_halfwidth > max_halfwidth) {
    throw DomainError("need 1 <= start_halfwidth <= max_halfwidth");
  }
}

SumValue gaussian_config_sum(const PeriodicConfiguration &config, const Vec2 &z,
                             GaussianParam alpha, const SumBudget &budget) {
  const double a = alpha.alpha();
  double log_tail = 0.0;
  const int k = detail::choose_halfwidth(
      budget, [&](int h) { return detail::direct_log_tail(config, a, h); }, &log_tail);
  const auto field = detail::direct_field<double>(config, z, a, k, false);
  return {field.value, k, detail::bound_from_log<double>(log_tail), field.rounding};
}

SumValue hex_form_sum(GaussianParam alpha, const std::array<Rational, 2> &shift,
                      const SumBudget &budget) {
  // Q(x, y) = x^2 + xy + y^2 has Gram [[1, 1/2], [1/2, 1]], smallest eigenvalue 1/2.
  const double c = 2.0 * std::numbers::pi * alpha.alpha() / std::sqrt(3.0);
  const double u = boost::rational_cast<double>(centered(shift[0]));
  const double v = boost::rational_cast<double>(centered(shift[1]));
  const double sigma = std::max(std::abs(u), std::abs(v));
  double log_tail = 0.0;
  const int k = detail::choose_halfwidth(
      budget, [&](int h) { return detail::log_tail_bound(c, 0.5, h, sigma); }, &log_tail);
  Accumulator<double> acc;
  for (int i = -k; i <= k; ++i) {
    const double x = i - u;
    for (int j = -k; j <= k; ++j) {
      const double y = j - v;
      const double e = c * (x * x + x * y + y * y);
      acc.add(std::exp(-e), 3.0 + e);
    }
  }
  return {acc.value(), k, detail::bound_from_log<double>(log_tail), acc.rounding_bound()};
}

DualSumValue gaussian_dual_sum(const PeriodicConfiguration &config, const Vec2 &z,
                               GaussianParam alpha, const SumBudget &budget) {
  const double a = alpha.alpha();
  double log_tail = 0.0;
  const int k = detail::choose_halfwidth(
      budget, [&](int h) { return detail::dual_log_tail(config, a, h); }, &log_tail);
  const auto field = detail::dual_field<double>(config, z, a, k, true, false);
  if (std::abs(field.imaginary) > budget.abs_tol) {
    throw ConsistencyError("imaginary part of the dual series exceeds abs_tol");
  }
  return {{field.value, k, detail::bound_from_log<double>(log_tail), field.rounding},
          field.imaginary};
}

DualSumValue gaussian_dual_sum(const Lattice2 &lattice, const Vec2 &z, GaussianParam alpha,
                               const SumBudget &budget) {
  return gaussian_dual_sum(PeriodicConfiguration::single(lattice), z, alpha, budget);
}

Vec2 gaussian_sum_gradient(const PeriodicConfiguration &config, const Vec2 &z,
                           GaussianParam alpha, const SumBudget &budget) {
  const double a = alpha.alpha();
  const int k = detail::choose_halfwidth(
      budget, [&](int h) { return detail::direct_log_tail(config, a, h); }, nullptr);
  const auto field = detail::direct_field<double>(config, z, a, k, true);
  return {field.grad_x, field.grad_y};
}

double certified_tail_bound(GaussianParam alpha, const Mat2 &gram, int halfwidth,
                            const Vec2 &shift) {
  if (halfwidth < 1) throw DomainError("halfwidth must be at least 1");
  const double sigma = std::max(std::abs(shift.x), std::abs(shift.y));
  const double lt = detail::log_tail_bound(std::numbers::pi * alpha.alpha(),
                                           detail::min_eigenvalue(gram), halfwidth, sigma);
  return detail::bound_from_log<double>(lt);
}

}  // namespace honeypol
