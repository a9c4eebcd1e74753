#include <math.h>
#include <stdio.h>
#include <string.h>

#include "excursion.h"

int main(void) {
    ExcModel *ou = NULL;
    if (exc_model_ou(1.0, &ou) != EXC_STATUS_OK) return 1;

    double nu = 0.0;
    if (exc_model_eval(ou, EXC_QUANTITY_NU, 1.0, &nu) != EXC_STATUS_OK) return 2;
    if (fabs(nu - 0.516284362302378) > 1e-12) return 3;

    if (exc_model_eval(ou, EXC_QUANTITY_NU, -1.0, &nu) != EXC_STATUS_DOMAIN) return 4;
    if (strlen(exc_last_error()) == 0) return 5;

    ExcStraddleLaw *law = NULL;
    if (exc_straddle_new(ou, 1.0, &law) != EXC_STATUS_OK) return 6;
    double cdf = 0.0;
    if (exc_straddle_eval(law, EXC_STRADDLE_QUANTITY_CDF_DELTA, 1.0, &cdf) != EXC_STATUS_OK) return 7;
    if (!(cdf > 0.0 && cdf < 1.0)) return 8;

    double g[100], age[100], residual[100];
    if (exc_sample_straddle_exact(1.0, 1.0, 100, 7, g, age, residual) != EXC_STATUS_OK) return 9;
    for (int i = 0; i < 100; i++) {
        if (g[i] < 0.0 || age[i] < 0.0 || residual[i] <= 0.0) return 10;
    }

    exc_straddle_free(law);
    exc_model_free(ou);
    printf("ok %s\n", exc_version());
    return 0;
}
