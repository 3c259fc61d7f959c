/*
 * honeypol C interface.
 *
 * Every call returns an hp_status; on failure hp_last_error() describes the
 * problem (thread-local, valid until the next failing call on that thread).
 * Handles are opaque and owned by the caller: release them with the matching
 * *_free function. Strings returned through char** are released with
 * hp_string_free.
 */
#ifndef HONEYPOL_H
#define HONEYPOL_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(HONEYPOL_BUILDING)
#    define HONEYPOL_API __declspec(dllexport)
#  else
#    define HONEYPOL_API __declspec(dllimport)
#  endif
#else
#  define HONEYPOL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hp_status {
  HP_OK = 0,
  HP_ERR_INVALID_ARGUMENT = 1,
  HP_ERR_DOMAIN = 2,
  HP_ERR_UNSUPPORTED_GEOMETRY = 3,
  HP_ERR_VALIDATION = 4,
  HP_ERR_TRUNCATION = 5,
  HP_ERR_CONSISTENCY = 6,
  HP_ERR_NONCONVERGENCE = 7,
  HP_ERR_THEOREM_VIOLATION = 8,
  HP_ERR_IO = 9,
  HP_ERR_INTERNAL = 10
} hp_status;

typedef enum hp_path { HP_PATH_AUTO = 0, HP_PATH_DIRECT = 1, HP_PATH_DUAL = 2 } hp_path;

typedef struct hp_config_s *hp_config;
typedef struct hp_sweep_s *hp_sweep;

typedef struct hp_budget {
  double abs_tol;
  int start_halfwidth;
  int max_halfwidth;
} hp_budget;

typedef struct hp_search {
  int grid_resolution;
  double descent_tol;
  int max_iterations;
  int multistart_count;
  hp_path path;
} hp_search;

typedef struct hp_sum {
  double value;
  double tail_bound;
  double rounding_bound;
  double imaginary; /* dual series only */
  int halfwidth_used;
} hp_sum;

typedef struct hp_polarization {
  long double value;
  long double mean_field;
  long double variation;
  long double tail_bound;
  double x, y;           /* argmin, reduced to the fundamental cell */
  double frac_x, frac_y; /* argmin in lattice coordinates, in [0, 1) */
  double gradient_norm;
  double alpha;
  hp_path path;
  int iterations;
} hp_polarization;

typedef struct hp_sweep_row {
  double alpha;
  long double hex_value;
  long double honey_value;
  long double gap;
  long double tail_hex;
  long double tail_honey;
  const char *regime; /* owned by the sweep handle */
  int certified;
  int converged;
} hp_sweep_row;

typedef struct hp_thresholds {
  double alpha_direct;
  double alpha_dual;
  double alpha_agm;
} hp_thresholds;

typedef struct hp_agm_check {
  double q;
  double a;       /* a(q) */
  double a_cubed; /* a(q^3) */
  double b;       /* b(q) */
  double residual;
  double tail_bound;
  double rounding_bound;
} hp_agm_check;

typedef struct hp_poisson_check {
  double direct;
  double dual;
  double difference;
  double imaginary;
  double tail_direct;
  double tail_dual;
} hp_poisson_check;

typedef struct hp_domination {
  double alpha;
  int radius;
  int direct_applicable;
  int agm_applicable;
  long direct_violations;
  long agm_violations;
  int minimal_terms;
  double minimal_term_max_deviation;
} hp_domination;

HONEYPOL_API const char *hp_status_string(hp_status status);
HONEYPOL_API const char *hp_last_error(void);
HONEYPOL_API void hp_string_free(char *s);

HONEYPOL_API hp_budget hp_budget_default(void);
HONEYPOL_API hp_search hp_search_default(void);

/* structures */
HONEYPOL_API hp_status hp_config_hexagonal(double density, hp_config *out);
HONEYPOL_API hp_status hp_config_honeycomb(double density, hp_config *out);
HONEYPOL_API hp_status hp_config_from_json(const char *json, hp_config *out);
HONEYPOL_API hp_status hp_config_load(const char *path, hp_config *out);
HONEYPOL_API void hp_config_free(hp_config config);
HONEYPOL_API hp_status hp_config_density(hp_config config, double *out);
HONEYPOL_API hp_status hp_config_size(hp_config config, size_t *out);
HONEYPOL_API hp_status hp_config_to_json(hp_config config, char **out);
/* The two deep holes of the underlying lattice as x0, y0, x1, y1; fails with
 * HP_ERR_UNSUPPORTED_GEOMETRY unless the lattice is hexagonal. */
HONEYPOL_API hp_status hp_config_deep_holes(hp_config config, double out[4]);
HONEYPOL_API hp_status hp_config_torus_distance(hp_config config, double px, double py,
                                                double qx, double qy, double *out);

/* lattice sums */
HONEYPOL_API hp_status hp_gaussian_sum(hp_config config, double zx, double zy, double alpha,
                                       const hp_budget *budget, hp_sum *out);
HONEYPOL_API hp_status hp_gaussian_dual_sum(hp_config config, double zx, double zy,
                                            double alpha, const hp_budget *budget,
                                            hp_sum *out);
HONEYPOL_API hp_status hp_gaussian_gradient(hp_config config, double zx, double zy,
                                            double alpha, const hp_budget *budget,
                                            double out[2]);
HONEYPOL_API hp_status hp_poisson_check_run(hp_config config, double zx, double zy,
                                            double alpha, const hp_budget *budget,
                                            hp_poisson_check *out);

/* cold spots and the hexagonal-versus-honeycomb sweep */
HONEYPOL_API hp_status hp_cold_spot(hp_config config, double alpha, const hp_search *search,
                                    const hp_budget *budget, hp_polarization *out);
HONEYPOL_API hp_status hp_log_spaced(double lo, double hi, int n, double *out);
HONEYPOL_API hp_status hp_sweep_run(double density, const double *alphas, size_t n,
                                    const hp_search *search, const hp_budget *budget,
                                    hp_sweep *out);
HONEYPOL_API void hp_sweep_free(hp_sweep sweep);
HONEYPOL_API hp_status hp_sweep_size(hp_sweep sweep, size_t *out);
HONEYPOL_API hp_status hp_sweep_get_row(hp_sweep sweep, size_t index, hp_sweep_row *out);
HONEYPOL_API hp_status hp_sweep_density(hp_sweep sweep, double *out);
HONEYPOL_API hp_status hp_sweep_to_csv(hp_sweep sweep, char **out);
HONEYPOL_API hp_status hp_sweep_to_json(hp_sweep sweep, char **out);
HONEYPOL_API hp_status hp_sweep_from_json(const char *json, hp_sweep *out);

/* arithmetic side */
HONEYPOL_API hp_status hp_get_thresholds(hp_thresholds *out);
HONEYPOL_API hp_status hp_agm_check_alpha(double alpha, const hp_budget *budget,
                                          hp_agm_check *out);
HONEYPOL_API hp_status hp_agm_check_nome(double q, const hp_budget *budget, hp_agm_check *out);
HONEYPOL_API hp_status hp_per_term_domination(double alpha, int radius, hp_domination *out);
/* g(s) = 3 s^5 - 3 s^2 - s + 1 at s = num / den, exactly. */
HONEYPOL_API hp_status hp_poly_g_exact(long long num, long long den, long long *out_num,
                                       long long *out_den);

#ifdef __cplusplus
}
#endif

#endif /* HONEYPOL_H */
