#include <stdio.h>
#include <string.h>
#include "qetsim.h"

#define CHECK(cond) do { if (!(cond)) { printf("fail line %d: %s\n", __LINE__, qet_last_error() ? qet_last_error() : ""); return 1; } } while (0)

int main(int argc, char **argv) {
    double v = 0.0;
    CHECK(qet_snr_curvature(10.0, 1e-36, 1e-35, &v) == QET_STATUS_OK);
    CHECK(v > 0.999999999 && v < 1.000000001);
    CHECK(qet_strain(2e-35, 1.0, &v) == QET_STATUS_OK && v == 1e-35);

    QetSnrParams p = qet_snr_params_default();
    CHECK(qet_snr_normalized(&p, NULL, &v) == QET_STATUS_OK && v == 1.0);
    p.finesse = -1.0;
    CHECK(qet_snr_parametric(&p, NULL, &v) == QET_STATUS_VALIDATION);
    CHECK(strstr(qet_last_error(), "finesse") != NULL);

    QetField *f = NULL;
    CHECK(qet_qix_chain(3, 1.0, 0.5, 0.375, 1.0, -2.5, 4.5, 32, -2.5, 3.25, 32, &f) == QET_STATUS_OK);
    size_t nt = 0, nx = 0;
    CHECK(qet_field_shape(f, &nt, &nx) == QET_STATUS_OK && nt == 32 && nx == 32);
    QetTrack *t = NULL;
    CHECK(qet_track_dip(f, 0.1, &t) == QET_STATUS_OK);
    int has = 0;
    CHECK(qet_track_velocity(t, &v, &has) == QET_STATUS_OK && has == 1);
    qet_track_free(t);
    qet_field_free(f);

    if (argc > 1) {
        CHECK(qet_recipe_run("fig8", argv[1]) == QET_STATUS_OK);
    }
    printf("ok %s\n", qet_version());
    return 0;
}
