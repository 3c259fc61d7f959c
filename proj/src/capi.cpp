#include "honeypol/honeypol.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "honeypol/cubic_agm.hpp"
#include "honeypol/errors.hpp"
#include "honeypol/lattice.hpp"
#include "honeypol/polarization.hpp"
#include "honeypol/report.hpp"
#include "honeypol/theta.hpp"

struct hp_config_s {
  honeypol::PeriodicConfiguration config;
};

struct hp_sweep_s {
  honeypol::SweepReport report;
};

namespace {

using namespace honeypol;

thread_local std::string g_last_error;

hp_status fail(hp_status status, const char *what) {
  g_last_error = what;
  return status;
}

hp_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return HP_ERR_DOMAIN;
    case ErrorCode::kUnsupportedGeometry: return HP_ERR_UNSUPPORTED_GEOMETRY;
    case ErrorCode::kValidation: return HP_ERR_VALIDATION;
    case ErrorCode::kTruncation: return HP_ERR_TRUNCATION;
    case ErrorCode::kConsistency: return HP_ERR_CONSISTENCY;
    case ErrorCode::kNonConvergence: return HP_ERR_NONCONVERGENCE;
    case ErrorCode::kTheoremViolation: return HP_ERR_THEOREM_VIOLATION;
    case ErrorCode::kIo: return HP_ERR_IO;
  }
  return HP_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
hp_status guarded(Fn &&fn) noexcept {
  try {
    fn();
    return HP_OK;
  } catch (const Error &e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(HP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(HP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HP_ERR_INTERNAL, "unknown error");
  }
}

SumBudget budget_of(const hp_budget *b) {
  if (b == nullptr) return {};
  return {b->abs_tol, b->start_halfwidth, b->max_halfwidth};
}

SearchConfig search_of(const hp_search *s) {
  if (s == nullptr) return {};
  SearchConfig c;
  c.grid_resolution = s->grid_resolution;
  c.descent_tol = s->descent_tol;
  c.max_iterations = s->max_iterations;
  c.multistart_count = s->multistart_count;
  c.path = s->path == HP_PATH_DIRECT ? SummationPath::kDirect
           : s->path == HP_PATH_DUAL ? SummationPath::kDual
                                     : SummationPath::kAuto;
  return c;
}

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hp_sum to_sum(const SumValue &v, double imaginary = 0.0) {
  return {v.value, v.tail_bound, v.rounding_bound, imaginary, v.halfwidth_used};
}

void fill_agm(Nome q, const hp_budget *budget, hp_agm_check *out) {
  const SumBudget b = budget_of(budget);
  const IdentityResidual r = cubic_identity_residual(q, b);
  out->q = q.q();
  out->a = agm_a(q, b).value;
  out->a_cubed = agm_a(q.cubed(), b).value;
  out->b = agm_b(q, b).value;
  out->residual = r.residual;
  out->tail_bound = r.tail_bound;
  out->rounding_bound = r.rounding_bound;
}

}  // namespace

#define HP_REQUIRE(cond)                                                  \
  do {                                                                    \
    if (!(cond)) return fail(HP_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

extern "C" {

const char *hp_status_string(hp_status status) {
  switch (status) {
    case HP_OK: return "ok";
    case HP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HP_ERR_DOMAIN: return "domain error";
    case HP_ERR_UNSUPPORTED_GEOMETRY: return "unsupported geometry";
    case HP_ERR_VALIDATION: return "validation error";
    case HP_ERR_TRUNCATION: return "series budget exhausted";
    case HP_ERR_CONSISTENCY: return "internal consistency check failed";
    case HP_ERR_NONCONVERGENCE: return "search did not converge";
    case HP_ERR_THEOREM_VIOLATION: return "theorem violation";
    case HP_ERR_IO: return "i/o error";
    case HP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *hp_last_error(void) { return g_last_error.c_str(); }

void hp_string_free(char *s) { std::free(s); }

hp_budget hp_budget_default(void) {
  const SumBudget b;
  return {b.abs_tol, b.start_halfwidth, b.max_halfwidth};
}

hp_search hp_search_default(void) {
  const SearchConfig s;
  return {s.grid_resolution, s.descent_tol, s.max_iterations, s.multistart_count, HP_PATH_AUTO};
}

hp_status hp_config_hexagonal(double density, hp_config *out) {
  HP_REQUIRE(out);
  return guarded([&] {
    *out = new hp_config_s{PeriodicConfiguration::single(hexagonal_lattice(density))};
  });
}

hp_status hp_config_honeycomb(double density, hp_config *out) {
  HP_REQUIRE(out);
  return guarded([&] { *out = new hp_config_s{honeycomb(density)}; });
}

hp_status hp_config_from_json(const char *json, hp_config *out) {
  HP_REQUIRE(json && out);
  return guarded([&] { *out = new hp_config_s{config_from_json(json)}; });
}

hp_status hp_config_load(const char *path, hp_config *out) {
  HP_REQUIRE(path && out);
  return guarded([&] { *out = new hp_config_s{load_custom_structure(path)}; });
}

void hp_config_free(hp_config config) { delete config; }

hp_status hp_config_density(hp_config config, double *out) {
  HP_REQUIRE(config && out);
  *out = config->config.density();
  return HP_OK;
}

hp_status hp_config_size(hp_config config, size_t *out) {
  HP_REQUIRE(config && out);
  *out = config->config.size();
  return HP_OK;
}

hp_status hp_config_to_json(hp_config config, char **out) {
  HP_REQUIRE(config && out);
  return guarded([&] { *out = copy_string(config_to_json(config->config)); });
}

hp_status hp_config_deep_holes(hp_config config, double out[4]) {
  HP_REQUIRE(config && out);
  return guarded([&] {
    const auto holes = deep_holes(config->config.lattice());
    out[0] = holes[0].coords.x;
    out[1] = holes[0].coords.y;
    out[2] = holes[1].coords.x;
    out[3] = holes[1].coords.y;
  });
}

hp_status hp_config_torus_distance(hp_config config, double px, double py, double qx,
                                   double qy, double *out) {
  HP_REQUIRE(config && out);
  return guarded([&] { *out = torus_distance(config->config.lattice(), {px, py}, {qx, qy}); });
}

hp_status hp_gaussian_sum(hp_config config, double zx, double zy, double alpha,
                          const hp_budget *budget, hp_sum *out) {
  HP_REQUIRE(config && out);
  return guarded([&] {
    *out = to_sum(gaussian_config_sum(config->config, {zx, zy}, GaussianParam(alpha),
                                      budget_of(budget)));
  });
}

hp_status hp_gaussian_dual_sum(hp_config config, double zx, double zy, double alpha,
                               const hp_budget *budget, hp_sum *out) {
  HP_REQUIRE(config && out);
  return guarded([&] {
    const DualSumValue d =
        gaussian_dual_sum(config->config, {zx, zy}, GaussianParam(alpha), budget_of(budget));
    *out = to_sum(d.real, d.imaginary);
  });
}

hp_status hp_gaussian_gradient(hp_config config, double zx, double zy, double alpha,
                               const hp_budget *budget, double out[2]) {
  HP_REQUIRE(config && out);
  return guarded([&] {
    const Vec2 g =
        gaussian_sum_gradient(config->config, {zx, zy}, GaussianParam(alpha), budget_of(budget));
    out[0] = g.x;
    out[1] = g.y;
  });
}

hp_status hp_poisson_check_run(hp_config config, double zx, double zy, double alpha,
                               const hp_budget *budget, hp_poisson_check *out) {
  HP_REQUIRE(config && out);
  return guarded([&] {
    const SumBudget b = budget_of(budget);
    const GaussianParam a(alpha);
    const SumValue direct = gaussian_config_sum(config->config, {zx, zy}, a, b);
    const DualSumValue dual = gaussian_dual_sum(config->config, {zx, zy}, a, b);
    out->direct = direct.value;
    out->dual = dual.real.value;
    out->difference = direct.value - dual.real.value;
    out->imaginary = dual.imaginary;
    out->tail_direct = direct.tail_bound;
    out->tail_dual = dual.real.tail_bound;
  });
}

hp_status hp_cold_spot(hp_config config, double alpha, const hp_search *search,
                       const hp_budget *budget, hp_polarization *out) {
  HP_REQUIRE(config && out);
  return guarded([&] {
    const PolarizationResult r = cold_spot_search(config->config, GaussianParam(alpha),
                                                  search_of(search), budget_of(budget));
    out->value = r.value;
    out->mean_field = r.mean_field;
    out->variation = r.variation;
    out->tail_bound = r.tail_bound;
    out->x = r.argmin.coords.x;
    out->y = r.argmin.coords.y;
    out->frac_x = r.argmin.fractional.x;
    out->frac_y = r.argmin.fractional.y;
    out->gradient_norm = r.gradient_norm_at_argmin;
    out->alpha = r.alpha;
    out->path = r.path == SummationPath::kDual ? HP_PATH_DUAL : HP_PATH_DIRECT;
    out->iterations = r.iterations;
  });
}

hp_status hp_log_spaced(double lo, double hi, int n, double *out) {
  HP_REQUIRE(out);
  return guarded([&] {
    const auto v = log_spaced(lo, hi, n);
    std::copy(v.begin(), v.end(), out);
  });
}

hp_status hp_sweep_run(double density, const double *alphas, size_t n, const hp_search *search,
                       const hp_budget *budget, hp_sweep *out) {
  HP_REQUIRE(out && (alphas || n == 0));
  return guarded([&] {
    *out = new hp_sweep_s{verify_theorem_sweep(density, std::span<const double>(alphas, n),
                                               search_of(search), budget_of(budget))};
  });
}

void hp_sweep_free(hp_sweep sweep) { delete sweep; }

hp_status hp_sweep_size(hp_sweep sweep, size_t *out) {
  HP_REQUIRE(sweep && out);
  *out = sweep->report.rows.size();
  return HP_OK;
}

hp_status hp_sweep_get_row(hp_sweep sweep, size_t index, hp_sweep_row *out) {
  HP_REQUIRE(sweep && out);
  if (index >= sweep->report.rows.size()) {
    return fail(HP_ERR_INVALID_ARGUMENT, "row index out of range");
  }
  const SweepRow &r = sweep->report.rows[index];
  *out = {r.alpha,          r.hex_value,        r.honey_value,   r.gap, r.tail_hex,
          r.tail_honey,     r.regime.c_str(),   r.certified ? 1 : 0, r.converged ? 1 : 0};
  return HP_OK;
}

hp_status hp_sweep_density(hp_sweep sweep, double *out) {
  HP_REQUIRE(sweep && out);
  *out = sweep->report.density;
  return HP_OK;
}

hp_status hp_sweep_to_csv(hp_sweep sweep, char **out) {
  HP_REQUIRE(sweep && out);
  return guarded([&] { *out = copy_string(sweep_to_csv(sweep->report)); });
}

hp_status hp_sweep_to_json(hp_sweep sweep, char **out) {
  HP_REQUIRE(sweep && out);
  return guarded([&] { *out = copy_string(sweep_to_json(sweep->report)); });
}

hp_status hp_sweep_from_json(const char *json, hp_sweep *out) {
  HP_REQUIRE(json && out);
  return guarded([&] { *out = new hp_sweep_s{sweep_from_json(json)}; });
}

hp_status hp_get_thresholds(hp_thresholds *out) {
  HP_REQUIRE(out);
  const ThresholdSet t = thresholds();
  *out = {t.alpha_direct, t.alpha_dual, t.alpha_agm};
  return HP_OK;
}

hp_status hp_agm_check_alpha(double alpha, const hp_budget *budget, hp_agm_check *out) {
  HP_REQUIRE(out);
  return guarded([&] { fill_agm(Nome::from_alpha(GaussianParam(alpha)), budget, out); });
}

hp_status hp_agm_check_nome(double q, const hp_budget *budget, hp_agm_check *out) {
  HP_REQUIRE(out);
  return guarded([&] { fill_agm(Nome(q), budget, out); });
}

hp_status hp_per_term_domination(double alpha, int radius, hp_domination *out) {
  HP_REQUIRE(out);
  return guarded([&] {
    const DominationReport r = per_term_domination_check(GaussianParam(alpha), radius);
    *out = {r.alpha,
            r.radius,
            r.direct_applicable ? 1 : 0,
            r.agm_applicable ? 1 : 0,
            r.direct_violations,
            r.agm_violations,
            r.minimal_terms,
            r.minimal_term_max_deviation};
  });
}

hp_status hp_poly_g_exact(long long num, long long den, long long *out_num, long long *out_den) {
  HP_REQUIRE(out_num && out_den);
  if (den == 0) return fail(HP_ERR_DOMAIN, "zero denominator");
  return guarded([&] {
    const Rational g = poly_g(Rational(num, den));
    *out_num = g.numerator();
    *out_den = g.denominator();
  });
}

}  // extern "C"
