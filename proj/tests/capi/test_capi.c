#include <math.h>
#include <stdio.h>
#include <string.h>

#include "navier_norms/navier_norms.h"

static int failures = 0;

#define EXPECT(cond)                                                     \
    do {                                                                 \
        if (!(cond)) {                                                   \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                  \
        }                                                                \
    } while (0)

int main(void) {
    char buf[256];
    int admissible = -1;
    int sign = 0;
    nn_verdict verdict;

    EXPECT(strcmp(nn_version(), "") != 0);
    EXPECT(strcmp(nn_status_name(NN_NON_FINITE), "NonFinite") == 0);

    EXPECT(nn_curve_eval("k0", "6", buf, sizeof buf, &admissible) == NN_OK);
    EXPECT(strcmp(buf, "2") == 0 && admissible == 1);
    EXPECT(nn_curve_eval("k0", "2", buf, sizeof buf, &admissible) == NN_OK);
    EXPECT(strcmp(buf, "inf") == 0);
    EXPECT(nn_curve_eval("grad1", "3", buf, sizeof buf, &admissible) == NN_OK);
    EXPECT(strcmp(buf, "1") == 0);
    EXPECT(nn_curve_eval("nope", "3", buf, sizeof buf, &admissible) == NN_INVALID_ARGUMENT);
    EXPECT(strlen(nn_last_error()) > 0);
    EXPECT(nn_curve_eval("k1", "x/y", buf, sizeof buf, &admissible) == NN_PARSE);

    EXPECT(nn_rational_compare("21/20", "1.05", &sign) == NN_OK && sign == 0);
    EXPECT(nn_rational_compare("3", "inf", &sign) == NN_OK && sign == -1);
    EXPECT(strcmp(nn_last_error(), "") == 0);

    EXPECT(nn_classify_pair(1, "3", "1", &verdict, buf, sizeof buf) == NN_OK);
    EXPECT(verdict == NN_VERDICT_ON_THEOREM1);
    EXPECT(strstr(buf, "on Theorem-1 curve") != NULL);
    EXPECT(nn_classify_pair(1, "7/2", "1", &verdict, buf, sizeof buf) == NN_OK);
    EXPECT(verdict == NN_VERDICT_OFF_CURVE);
    EXPECT(nn_classify_pair(1, "100", "1", &verdict, buf, sizeof buf) == NN_OK);
    EXPECT(verdict == NN_VERDICT_OFF_CURVE || verdict == NN_VERDICT_INADMISSIBLE);
    EXPECT(nn_classify_pair(5, "3", "1", &verdict, buf, sizeof buf) == NN_OUT_OF_RANGE);

    nn_curve_table* table = NULL;
    EXPECT(nn_curve_sample("k1", "3", "4", 5, &table) == NN_OK);
    EXPECT(nn_curve_table_size(table) == 5);
    EXPECT(nn_curve_table_admissible(table) == 1);
    nn_curve_table_free(table);
    EXPECT(nn_curve_sample("k1", "4", "3", 5, &table) == NN_OUT_OF_RANGE);

    nn_bihari_config* bc = NULL;
    EXPECT(nn_bihari_config_parse("n = 16\ntrials = 4\nseed = 3\n", &bc) == NN_OK);
    EXPECT(nn_bihari_config_seed(bc) == 3);
    EXPECT(nn_bihari_config_set_seed(bc, 11) == NN_OK);
    EXPECT(strstr(nn_bihari_config_text(bc), "seed = 11") != NULL);
    nn_bihari_report* br = NULL;
    EXPECT(nn_bihari_run(bc, 1, &br) == NN_OK);
    EXPECT(nn_bihari_report_trials(br) == 4);
    EXPECT(nn_bihari_report_violations(br) == 0);
    nn_bihari_report_free(br);
    nn_bihari_config_free(bc);
    EXPECT(nn_bihari_config_parse("beta = 1.5\n", &bc) == NN_INVALID_ARGUMENT);

    nn_sim_config* sc = NULL;
    EXPECT(nn_sim_config_parse("N = 8\nT = 0.05\ndt = 0.01\nnorms = (0, 2) (1, 2)\ntheta = 0.2\n", &sc) == NN_OK);
    nn_sim_result* sr = NULL;
    EXPECT(nn_simulate(sc, &sr) == NN_OK);
    EXPECT(nn_sim_result_steps(sr) == 5);
    EXPECT(nn_sim_result_max_divergence(sr) < 1e-10);
    double lv = -1, ld = -1;
    nn_sim_result_leray_residuals(sr, &lv, &ld);
    EXPECT(lv >= 0 && ld >= 0);
    EXPECT(nn_sim_result_write_snapshot(sr, 0, "unused.nns") == NN_OUT_OF_RANGE);
    nn_sim_result_free(sr);
    nn_sim_config_free(sc);

    EXPECT(nn_sim_config_parse("N = 8\nnu = 1e-3\namplitude = 1000\ndt = 0.5\nT = 200\nsample_stride = 0.5\n", &sc) ==
           NN_OK);
    EXPECT(nn_simulate(sc, &sr) == NN_NON_FINITE);
    EXPECT(strstr(nn_last_error(), "step") != NULL);
    nn_sim_config_free(sc);

    nn_trajectory* tr = NULL;
    EXPECT(nn_trajectory_load_csv("/nonexistent/norms.csv", &tr) == NN_IO);
    double v = 0;
    EXPECT(nn_trajectory_mixed_norm(NULL, 0, 2.0, 2.0, &v) == NN_INVALID_ARGUMENT);

    if (failures) {
        fprintf(stderr, "%d failure(s)\n", failures);
        return 1;
    }
    printf("C API: all checks passed\n");
    return 0;
}
