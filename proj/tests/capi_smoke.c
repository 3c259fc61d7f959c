/* The public header must compile as C. */
#include <stdio.h>

#include "honeypol/honeypol.h"

int main(void) {
  hp_thresholds t;
  hp_config c = NULL;
  double rho = 0.0;
  if (hp_get_thresholds(&t) != HP_OK) return 1;
  if (hp_config_honeycomb(1.0, &c) != HP_OK) return 1;
  if (hp_config_density(c, &rho) != HP_OK) return 1;
  hp_config_free(c);
  printf("%.6g %.6g %.5g %g\n", t.alpha_direct, t.alpha_dual, t.alpha_agm, rho);
  return rho > 0.999 && rho < 1.001 ? 0 : 1;
}
