#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "honeypol/lattice.hpp"
#include "honeypol/theta.hpp"

namespace honeypol {

/// How the Gaussian sum is evaluated. kAuto picks the direct series when
/// alpha * covolume >= 1 and the Poisson-dual series otherwise.
enum class SummationPath { kAuto, kDirect, kDual };

struct SearchConfig {
  int grid_resolution = 64;
  /// Bound on the scale-free gradient: grad(f)/f on the direct path and
  /// grad(f)/A on the dual path, A the total amplitude of the non-constant
  /// Fourier modes. Units are inverse length.
  double descent_tol = 1e-9;
  int max_iterations = 500;
  int multistart_count = 4;
  SummationPath path = SummationPath::kAuto;

  void validate() const;
};

struct PolarizationResult {
  /// min_z of the configuration's Gaussian sum.
  long double value = 0;
  /// z-independent part of value: density / alpha on the dual path, 0 on the
  /// direct path.
  long double mean_field = 0;
  /// value - mean_field, evaluated without cancellation.
  long double variation = 0;
  TorusPoint argmin;
  double gradient_norm_at_argmin = 0.0;
  double alpha = 0.0;
  std::string config_label;
  long double tail_bound = 0;
  long double rounding_bound = 0;
  SummationPath path = SummationPath::kDirect;
  int iterations = 0;
};

/// Grid scan over one fundamental cell, then Armijo gradient descent from the
/// best grid cells and from the optional seeds; the best terminal point,
/// reduced to the torus, is returned. Equal minima resolve to the
/// lexicographically smaller fractional coordinates.
/// Throws NonConvergenceError (carrying the best iterate) when the best
/// terminal point has not reached descent_tol.
PolarizationResult cold_spot_search(const PeriodicConfiguration &config, GaussianParam alpha,
                                    const SearchConfig &search = {},
                                    const SumBudget &budget = {},
                                    std::span<const Vec2> seeds = {},
                                    std::string label = {});

/// Same as cold_spot_search.
PolarizationResult polarization_value(const PeriodicConfiguration &config, GaussianParam alpha,
                                      const SearchConfig &search = {},
                                      const SumBudget &budget = {},
                                      std::span<const Vec2> seeds = {},
                                      std::string label = {});

/// "direct", "dual-agm", "both" or "numeric-only" for an effective
/// density-one parameter alpha.
std::string regime_label(double alpha);

struct SweepRow {
  double alpha = 0.0;
  long double hex_value = 0;
  long double honey_value = 0;
  /// hex_value - honey_value; on the dual path the common mean field cancels
  /// analytically and only the variations are subtracted.
  long double gap = 0;
  long double tail_hex = 0;
  long double tail_honey = 0;
  std::string regime;
  /// gap exceeds the combined tail and rounding bounds, both searches converged.
  bool certified = false;
  bool converged = true;
};

struct SweepReport {
  double density = 1.0;
  std::vector<SweepRow> rows;
};

/// Hexagonal versus honeycomb polarization at a common density for every alpha
/// of the grid (rows sorted by alpha). Throws TheoremViolationError if a row
/// certifies a negative gap.
SweepReport verify_theorem_sweep(double density, std::span<const double> alpha_grid,
                                 const SearchConfig &search = {},
                                 const SumBudget &budget = {});

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int n);

struct DominationReport {
  double alpha = 0.0;
  int radius = 0;
  bool direct_applicable = false;  // alpha > alpha_direct
  bool agm_applicable = false;     // alpha > alpha_agm
  long direct_violations = 0;
  long agm_violations = 0;
  std::vector<std::pair<int, int>> direct_violating_terms;  // first few
  std::vector<std::pair<int, int>> agm_violating_terms;
  /// Number of terms attaining the minimal shifted form value 1/3 and the
  /// largest |exp(-x) - 2 exp(-2x)| among them.
  int minimal_terms = 0;
  double minimal_term_max_deviation = 0.0;
};

/// Term-by-term comparison of the hexagonal and honeycomb series in the box of
/// the given radius. The direct regime compares exp(-x) with 2 exp(-2x) for
/// x = (2 pi alpha / sqrt3) Q(k - 1/3, l - 1/3); the AGM regime compares
/// 3 exp(-3x) - exp(-x) with 3 exp(-3x/2) - exp(-x/2) for
/// x = (2 pi alpha / sqrt3) Q(k, l), (k, l) != 0, alpha being the parameter
/// after the alpha -> 1/alpha substitution.
/// Throws TheoremViolationError if a violation occurs in an applicable regime.
DominationReport per_term_domination_check(GaussianParam alpha, int radius);

}  // namespace honeypol
