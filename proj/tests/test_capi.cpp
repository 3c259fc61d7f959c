// Exercises the shared library through its C header only.
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "honeypol/honeypol.h"

namespace {

struct Config {
  hp_config h = nullptr;
  ~Config() { hp_config_free(h); }
};

std::string take(char *s) {
  std::string out(s);
  hp_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, StatusStringsAndNullArguments) {
  EXPECT_STREQ(hp_status_string(HP_OK), "ok");
  EXPECT_NE(std::strlen(hp_status_string(HP_ERR_THEOREM_VIOLATION)), 0u);
  EXPECT_EQ(hp_config_hexagonal(1.0, nullptr), HP_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(hp_last_error()).find("null"), std::string::npos);
  EXPECT_EQ(hp_get_thresholds(nullptr), HP_ERR_INVALID_ARGUMENT);
  hp_config_free(nullptr);
  hp_sweep_free(nullptr);
  hp_string_free(nullptr);
}

TEST(CApi, ConfigLifecycle) {
  Config hex, honey;
  ASSERT_EQ(hp_config_hexagonal(2.0, &hex.h), HP_OK);
  ASSERT_EQ(hp_config_honeycomb(2.0, &honey.h), HP_OK);
  double rho = 0;
  size_t n = 0;
  ASSERT_EQ(hp_config_density(honey.h, &rho), HP_OK);
  EXPECT_NEAR(rho, 2.0, 1e-12);
  ASSERT_EQ(hp_config_size(honey.h, &n), HP_OK);
  EXPECT_EQ(n, 2u);

  char *json = nullptr;
  ASSERT_EQ(hp_config_to_json(honey.h, &json), HP_OK);
  Config back;
  ASSERT_EQ(hp_config_from_json(json, &back.h), HP_OK);
  hp_string_free(json);
  ASSERT_EQ(hp_config_size(back.h, &n), HP_OK);
  EXPECT_EQ(n, 2u);

  double holes[4];
  ASSERT_EQ(hp_config_deep_holes(hex.h, holes), HP_OK);
  double d = -1;
  ASSERT_EQ(hp_config_torus_distance(hex.h, holes[0], holes[1], 0, 0, &d), HP_OK);
  EXPECT_NEAR(d * d, 2.0 / (3.0 * std::sqrt(3.0)) / 2.0, 1e-12);
}

TEST(CApi, ErrorsMapToStatusCodes) {
  hp_config c = nullptr;
  EXPECT_EQ(hp_config_hexagonal(-1.0, &c), HP_ERR_DOMAIN);
  EXPECT_EQ(c, nullptr);
  EXPECT_EQ(hp_config_from_json("{\"basis\": [[1, 2], [2, 4]], \"shifts\": [[0, 0]]}", &c),
            HP_ERR_VALIDATION);
  EXPECT_EQ(hp_config_load("/nonexistent/structure.json", &c), HP_ERR_IO);
  ASSERT_EQ(hp_config_from_json("{\"basis\": [[1, 0], [0, 1]], \"shifts\": [[0, 0]]}", &c), HP_OK);
  double holes[4];
  EXPECT_EQ(hp_config_deep_holes(c, holes), HP_ERR_UNSUPPORTED_GEOMETRY);
  hp_sum s;
  hp_budget tiny = hp_budget_default();
  tiny.max_halfwidth = 8;
  EXPECT_EQ(hp_gaussian_sum(c, 0, 0, 0.001, &tiny, &s), HP_ERR_TRUNCATION);
  hp_search search = hp_search_default();
  search.max_iterations = 1;
  search.descent_tol = 1e-30;
  hp_polarization p;
  hp_config honey = nullptr;
  ASSERT_EQ(hp_config_honeycomb(1.0, &honey), HP_OK);
  EXPECT_EQ(hp_cold_spot(honey, 1.0, &search, nullptr, &p), HP_ERR_NONCONVERGENCE);
  hp_config_free(honey);
  hp_config_free(c);
}

TEST(CApi, SumsAndChecks) {
  Config hex;
  ASSERT_EQ(hp_config_hexagonal(1.0, &hex.h), HP_OK);
  double holes[4];
  ASSERT_EQ(hp_config_deep_holes(hex.h, holes), HP_OK);
  hp_poisson_check pc;
  ASSERT_EQ(hp_poisson_check_run(hex.h, holes[0], holes[1], 1.0, nullptr, &pc), HP_OK);
  EXPECT_LT(std::abs(pc.difference), 2e-10);
  EXPECT_NEAR(pc.direct, 0.920371373318, 1e-11);

  double g[2];
  ASSERT_EQ(hp_gaussian_gradient(hex.h, holes[0], holes[1], 1.0, nullptr, g), HP_OK);
  EXPECT_LT(std::hypot(g[0], g[1]), 1e-12);

  hp_agm_check agm;
  ASSERT_EQ(hp_agm_check_alpha(1.0, nullptr, &agm), HP_OK);
  EXPECT_LT(std::abs(agm.residual), 1e-12);
  // unit density is self-dual at alpha = 1: the deep-hole sum is b(q)
  EXPECT_NEAR(agm.b, pc.direct, 1e-12);
  EXPECT_EQ(hp_agm_check_nome(1.5, nullptr, &agm), HP_ERR_DOMAIN);

  hp_thresholds t;
  ASSERT_EQ(hp_get_thresholds(&t), HP_OK);
  EXPECT_NEAR(t.alpha_direct * t.alpha_dual, 1.0, 1e-15);

  long long num = 0, den = 0;
  ASSERT_EQ(hp_poly_g_exact(1, 5, &num, &den), HP_OK);
  EXPECT_EQ(num, 2128);
  EXPECT_EQ(den, 3125);
  EXPECT_EQ(hp_poly_g_exact(1, 0, &num, &den), HP_ERR_DOMAIN);

  hp_domination dom;
  ASSERT_EQ(hp_per_term_domination(1.0, 10, &dom), HP_OK);
  EXPECT_EQ(dom.direct_violations, 0);
  EXPECT_EQ(dom.minimal_terms, 3);
}

TEST(CApi, ColdSpotAndSweep) {
  Config honey;
  ASSERT_EQ(hp_config_honeycomb(1.0, &honey.h), HP_OK);
  hp_polarization p;
  ASSERT_EQ(hp_cold_spot(honey.h, 1.0, nullptr, nullptr, &p), HP_OK);
  EXPECT_NEAR(p.frac_x, 2.0 / 3.0, 1e-6);
  EXPECT_NEAR(p.frac_y, 2.0 / 3.0, 1e-6);
  EXPECT_EQ(p.path, HP_PATH_DIRECT);

  std::vector<double> alphas(4);
  ASSERT_EQ(hp_log_spaced(0.05, 20.0, 4, alphas.data()), HP_OK);
  hp_search s = hp_search_default();
  s.grid_resolution = 16;
  hp_sweep sweep = nullptr;
  ASSERT_EQ(hp_sweep_run(1.0, alphas.data(), alphas.size(), &s, nullptr, &sweep), HP_OK);
  size_t n = 0;
  ASSERT_EQ(hp_sweep_size(sweep, &n), HP_OK);
  ASSERT_EQ(n, 4u);
  for (size_t i = 0; i < n; ++i) {
    hp_sweep_row r;
    ASSERT_EQ(hp_sweep_get_row(sweep, i, &r), HP_OK);
    EXPECT_TRUE(r.certified);
    EXPECT_GT(r.gap, 0.0L);
  }
  hp_sweep_row r;
  EXPECT_EQ(hp_sweep_get_row(sweep, 4, &r), HP_ERR_INVALID_ARGUMENT);

  char *csv = nullptr, *json = nullptr;
  ASSERT_EQ(hp_sweep_to_csv(sweep, &csv), HP_OK);
  ASSERT_EQ(hp_sweep_to_json(sweep, &json), HP_OK);
  const std::string csv_text = take(csv);
  const std::string json_text = take(json);
  EXPECT_EQ(csv_text.rfind("alpha,hex_value,honey_value,gap,regime,certified\n", 0), 0u);

  hp_sweep back = nullptr;
  ASSERT_EQ(hp_sweep_from_json(json_text.c_str(), &back), HP_OK);
  char *csv2 = nullptr;
  ASSERT_EQ(hp_sweep_to_csv(back, &csv2), HP_OK);
  EXPECT_EQ(take(csv2), csv_text);
  hp_sweep_free(back);
  hp_sweep bad = nullptr;
  EXPECT_EQ(hp_sweep_from_json("{]", &bad), HP_ERR_VALIDATION);
  EXPECT_EQ(bad, nullptr);
  hp_sweep_free(sweep);
}
