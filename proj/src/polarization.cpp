#include "honeypol/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "honeypol/cubic_agm.hpp"
#include "honeypol/errors.hpp"
#include "series.hpp"

namespace honeypol {
namespace {

using Real = long double;

constexpr Real kEps = std::numeric_limits<Real>::epsilon();

// Gaussian sum of one configuration as a function of z, normalized so that the
// descent works on an O(1) scale whatever alpha is. On the direct path the
// level is log f; on the dual path it is (f - mean_field) / amplitude.
class Objective {
 public:
  struct Sample {
    Real level = 0;
    Real gx = 0;
    Real gy = 0;
    Real value = 0;
    Real variation = 0;
    Real rounding = 0;
  };

  Objective(const PeriodicConfiguration &config, double alpha, const SumBudget &budget,
            SummationPath path)
      : config_(config), alpha_(alpha) {
    dual_ = path == SummationPath::kDual ||
            (path == SummationPath::kAuto && alpha * config.lattice().covolume() < 1.0);
    double log_tail = 0.0;
    if (dual_) {
      halfwidth_ = detail::choose_halfwidth(
          budget, [&](int h) { return detail::dual_log_tail(config, alpha, h); }, &log_tail);
      mean_field_ = static_cast<Real>(config.size()) /
                    (static_cast<Real>(config.lattice().covolume()) * static_cast<Real>(alpha));
      amplitude_ = mode_amplitude();
    } else {
      halfwidth_ = detail::choose_halfwidth(
          budget, [&](int h) { return detail::direct_log_tail(config, alpha, h); }, &log_tail);
    }
    tail_ = detail::bound_from_log<Real>(log_tail);
  }

  bool dual() const { return dual_; }
  Real mean_field() const { return mean_field_; }
  Real tail() const { return tail_; }

  Sample evaluate(const Vec2 &z, bool want_grad) const {
    Sample s;
    if (dual_) {
      const auto f = detail::dual_field<Real>(config_, z, alpha_, halfwidth_, false, want_grad);
      s.variation = f.value;
      s.value = mean_field_ + f.value;
      s.rounding = f.rounding;
      s.level = f.value / amplitude_;
      s.gx = f.grad_x / amplitude_;
      s.gy = f.grad_y / amplitude_;
    } else {
      const auto f = detail::direct_field<Real>(config_, z, alpha_, halfwidth_, want_grad);
      s.value = f.value;
      s.variation = f.value;
      s.rounding = f.rounding;
      s.level = std::log(f.value);
      s.gx = f.grad_x / f.value;
      s.gy = f.grad_y / f.value;
    }
    return s;
  }

  // Level differences below this are rounding noise.
  Real noise(Real level) const { return 256 * kEps * (1 + std::abs(level)); }

 private:
  // N / (vol alpha) * sum_{xi != 0} exp(-pi |xi|^2 / alpha), the largest
  // possible |variation|.
  Real mode_amplitude() const {
    const Mat2 d = config_.lattice().basis().inverse().transpose();
    const Real c = std::numbers::pi_v<Real> / static_cast<Real>(alpha_);
    Real sum = 0;
    for (int k = -halfwidth_; k <= halfwidth_; ++k) {
      for (int l = -halfwidth_; l <= halfwidth_; ++l) {
        if (k == 0 && l == 0) continue;
        const Real xx = static_cast<Real>(d.m11) * k + static_cast<Real>(d.m12) * l;
        const Real xy = static_cast<Real>(d.m21) * k + static_cast<Real>(d.m22) * l;
        sum += std::exp(-c * (xx * xx + xy * xy));
      }
    }
    const Real a = mean_field_ * sum;
    return a > 0 ? a : Real(1);
  }

  const PeriodicConfiguration &config_;
  double alpha_;
  bool dual_ = false;
  int halfwidth_ = 0;
  Real mean_field_ = 0;
  Real amplitude_ = 1;
  Real tail_ = 0;
};

struct Terminal {
  Vec2 z;
  Objective::Sample sample;
  double grad_norm = 0.0;
  bool converged = false;
  int iterations = 0;
};

double min_generator_length(const Lattice2 &lattice) {
  const Mat2 r = lagrange_reduce(lattice).reduced;
  return norm(r.col(0));
}

double grad_norm(const Objective::Sample &s) {
  return static_cast<double>(std::sqrt(s.gx * s.gx + s.gy * s.gy));
}

Terminal descend(const Objective &obj, Vec2 z, const SearchConfig &search, double max_step,
                 double initial_step) {
  constexpr Real kArmijo = 1e-4L;
  Terminal t;
  Objective::Sample cur = obj.evaluate(z, true);
  double step = initial_step;
  int it = 0;
  for (; it < search.max_iterations; ++it) {
    const double g = grad_norm(cur);
    if (g < search.descent_tol) {
      t.converged = true;
      break;
    }
    // step is a length; the trial point moves by `step` along -grad.
    step = std::min(step, max_step);
    bool accepted = false;
    while (step > 1e-18 * max_step) {
      const Real scale = static_cast<Real>(step) / static_cast<Real>(g);
      const Vec2 trial{z.x - static_cast<double>(scale * cur.gx),
                       z.y - static_cast<double>(scale * cur.gy)};
      const Objective::Sample next = obj.evaluate(trial, true);
      const Real decrease = cur.level - next.level;
      const Real noise = obj.noise(cur.level);
      const bool armijo =
          decrease > noise && decrease >= kArmijo * scale * (cur.gx * cur.gx + cur.gy * cur.gy);
      // Once level differences drop into rounding noise, accept steps that
      // reduce the gradient instead (approximate Wolfe condition).
      const bool flat = std::abs(decrease) <= noise && grad_norm(next) < g;
      if (armijo || flat) {
        z = trial;
        cur = next;
        accepted = true;
        step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  t.z = z;
  t.sample = cur;
  t.grad_norm = grad_norm(cur);
  t.converged = t.converged || t.grad_norm < search.descent_tol;
  t.iterations = it;
  return t;
}

bool lex_less(const Vec2 &a, const Vec2 &b) {
  constexpr double tol = 1e-9;
  if (std::abs(a.x - b.x) > tol) return a.x < b.x;
  if (std::abs(a.y - b.y) > tol) return a.y < b.y;
  return false;
}

}  // namespace

void SearchConfig::validate() const {
  if (grid_resolution < 8) throw DomainError("grid_resolution must be at least 8");
  if (!(descent_tol > 0.0)) throw DomainError("descent_tol must be positive");
  if (max_iterations < 1) throw DomainError("max_iterations must be positive");
  if (multistart_count < 1) throw DomainError("multistart_count must be at least 1");
}

PolarizationResult cold_spot_search(const PeriodicConfiguration &config, GaussianParam alpha,
                                    const SearchConfig &search, const SumBudget &budget,
                                    std::span<const Vec2> seeds, std::string label) {
  search.validate();
  budget.validate();
  const Objective obj(config, alpha.alpha(), budget, search.path);
  const Lattice2 &lattice = config.lattice();
  const int n = search.grid_resolution;

  struct Cell {
    Real level;
    Vec2 z;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 z = lattice.to_cartesian({static_cast<double>(i) / n, static_cast<double>(j) / n});
      cells.push_back({obj.evaluate(z, false).level, z});
    }
  }
  const auto count = std::min<std::size_t>(cells.size(), search.multistart_count);
  std::partial_sort(cells.begin(), cells.begin() + count, cells.end(),
                    [](const Cell &a, const Cell &b) { return a.level < b.level; });

  std::vector<Vec2> starts;
  for (std::size_t i = 0; i < count; ++i) starts.push_back(cells[i].z);
  starts.insert(starts.end(), seeds.begin(), seeds.end());

  const double cell = min_generator_length(lattice);
  const double max_step = 0.25 * cell;
  const double initial_step = 0.25 * cell / n;

  std::vector<Terminal> terminals;
  for (const Vec2 &s : starts) terminals.push_back(descend(obj, s, search, max_step, initial_step));

  const Terminal *best = nullptr;
  Vec2 best_frac;
  for (const Terminal &t : terminals) {
    const Vec2 frac = reduce_to_torus(lattice, t.z).fractional;
    if (best == nullptr) {
      best = &t;
      best_frac = frac;
      continue;
    }
    const Real diff = t.sample.level - best->sample.level;
    const Real noise = obj.noise(best->sample.level);
    const bool better = diff < -noise;
    const bool tie = std::abs(diff) <= noise;
    // prefer converged points among ties, then smaller fractional coordinates
    if (better || (tie && ((t.converged && !best->converged) ||
                           (t.converged == best->converged && lex_less(frac, best_frac))))) {
      best = &t;
      best_frac = frac;
    }
  }

  if (!best->converged) {
    std::ostringstream msg;
    msg << "cold-spot descent did not reach gradient tolerance " << search.descent_tol
        << " (best " << best->grad_norm << ")";
    throw NonConvergenceError(msg.str(), best->z, best->grad_norm);
  }

  PolarizationResult r;
  r.value = best->sample.value;
  r.mean_field = obj.mean_field();
  r.variation = best->sample.variation;
  r.argmin = reduce_to_torus(lattice, best->z);
  r.gradient_norm_at_argmin = best->grad_norm;
  r.alpha = alpha.alpha();
  r.config_label = std::move(label);
  r.tail_bound = obj.tail();
  r.rounding_bound = best->sample.rounding;
  r.path = obj.dual() ? SummationPath::kDual : SummationPath::kDirect;
  r.iterations = best->iterations;
  return r;
}

PolarizationResult polarization_value(const PeriodicConfiguration &config, GaussianParam alpha,
                                      const SearchConfig &search, const SumBudget &budget,
                                      std::span<const Vec2> seeds, std::string label) {
  return cold_spot_search(config, alpha, search, budget, seeds, std::move(label));
}

std::string regime_label(double alpha) {
  const ThresholdSet th = thresholds();
  const bool direct = alpha > th.alpha_direct;
  const bool agm = 1.0 / alpha > th.alpha_agm;
  if (direct && agm) return "both";
  if (direct) return "direct";
  if (agm) return "dual-agm";
  return "numeric-only";
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw DomainError("log_spaced needs 0 < lo < hi and n >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

struct Evaluated {
  PolarizationResult result;
  bool converged = true;
};

// A non-converged search still yields a row: the best iterate is evaluated
// and the row is flagged.
Evaluated search_or_flag(const PeriodicConfiguration &config, GaussianParam alpha,
                         const SearchConfig &search, const SumBudget &budget,
                         std::span<const Vec2> seeds, const char *label) {
  try {
    return {cold_spot_search(config, alpha, search, budget, seeds, label), true};
  } catch (const NonConvergenceError &e) {
    const Vec2 z = e.best_iterate();
    SearchConfig one = search;
    one.max_iterations = 1;
    one.descent_tol = std::numeric_limits<double>::max();
    Evaluated ev{cold_spot_search(config, alpha, one, budget, std::span<const Vec2>(&z, 1), label),
                 false};
    ev.result.gradient_norm_at_argmin = e.best_gradient_norm();
    return ev;
  }
}

}  // namespace

SweepReport verify_theorem_sweep(double density, std::span<const double> alpha_grid,
                                 const SearchConfig &search, const SumBudget &budget) {
  const PeriodicConfiguration hex = PeriodicConfiguration::single(hexagonal_lattice(density));
  const PeriodicConfiguration honey = honeycomb(density);
  if (std::abs(hex.density() - honey.density()) > 1e-12 * density) {
    throw ConsistencyError("hexagonal and honeycomb densities differ");
  }
  std::vector<Vec2> hex_seeds;
  for (const TorusPoint &p : deep_holes(hex.lattice())) hex_seeds.push_back(p.coords);
  // sqrt2 * 2 z0 and the occupied sqrt2 * z0
  std::vector<Vec2> honey_seeds;
  for (const TorusPoint &p : deep_holes(honey.lattice())) honey_seeds.push_back(p.coords);

  std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
  std::sort(alphas.begin(), alphas.end());

  SweepReport report;
  report.density = density;
  for (double a : alphas) {
    const GaussianParam alpha(a);
    const Evaluated h = search_or_flag(hex, alpha, search, budget, hex_seeds, "hexagonal");
    const Evaluated g = search_or_flag(honey, alpha, search, budget, honey_seeds, "honeycomb");

    SweepRow row;
    row.alpha = a;
    row.hex_value = h.result.value;
    row.honey_value = g.result.value;
    const bool both_dual =
        h.result.path == SummationPath::kDual && g.result.path == SummationPath::kDual;
    // Both mean fields equal density / alpha.
    row.gap = both_dual ? h.result.variation - g.result.variation
                        : h.result.value - g.result.value;
    row.tail_hex = h.result.tail_bound;
    row.tail_honey = g.result.tail_bound;
    row.regime = regime_label(a / density);
    row.converged = h.converged && g.converged;
    const Real margin =
        row.tail_hex + row.tail_honey + h.result.rounding_bound + g.result.rounding_bound;
    row.certified = row.converged && row.gap > margin;
    if (row.converged && row.gap < -margin) {
      std::ostringstream msg;
      msg << "honeycomb polarization certifiably exceeds hexagonal at alpha = " << a
          << ", density = " << density;
      throw TheoremViolationError(msg.str());
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

DominationReport per_term_domination_check(GaussianParam alpha, int radius) {
  if (radius < 1) throw DomainError("radius must be at least 1");
  const ThresholdSet th = thresholds();
  const double a = alpha.alpha();
  const double c = 2.0 * std::numbers::pi * a / std::numbers::sqrt3;
  constexpr std::size_t kKeep = 16;

  DominationReport rep;
  rep.alpha = a;
  rep.radius = radius;
  rep.direct_applicable = a > th.alpha_direct;
  rep.agm_applicable = a > th.alpha_agm;

  for (int k = -radius; k <= radius; ++k) {
    for (int l = -radius; l <= radius; ++l) {
      // 9 Q(k - 1/3, l - 1/3), an integer
      const long u = 3L * k - 1;
      const long v = 3L * l - 1;
      const long q9 = u * u + u * v + v * v;
      const double x = c * static_cast<double>(q9) / 9.0;
      if (1.0 - 2.0 * std::exp(-x) <= 0.0) {
        ++rep.direct_violations;
        if (rep.direct_violating_terms.size() < kKeep) rep.direct_violating_terms.emplace_back(k, l);
      }
      if (q9 == 3) {
        ++rep.minimal_terms;
        rep.minimal_term_max_deviation = std::max(
            rep.minimal_term_max_deviation, std::abs(std::exp(-x) - 2.0 * std::exp(-2.0 * x)));
      }

      if (k == 0 && l == 0) continue;
      const double y = c * static_cast<double>(k * k + k * l + l * l);
      if (poly_g(std::exp(-0.5 * y)) <= 0.0) {
        ++rep.agm_violations;
        if (rep.agm_violating_terms.size() < kKeep) rep.agm_violating_terms.emplace_back(k, l);
      }
    }
  }

  if ((rep.direct_applicable && rep.direct_violations > 0) ||
      (rep.agm_applicable && rep.agm_violations > 0)) {
    std::ostringstream msg;
    msg << "per-term domination fails at alpha = " << a << " (direct " << rep.direct_violations
        << ", agm " << rep.agm_violations << ")";
    throw TheoremViolationError(msg.str());
  }
  return rep;
}

}  // namespace honeypol
