/* Demo of the C interface: evaluate one realization, then run a small
 * seeded sweep and print its CSV.
 *
 * Build from the repository root:
 *   cargo build --release -p femtorelay-capi
 *   cc -Icrates/femtorelay-capi/include crates/femtorelay-capi/examples/demo.c \
 *      target/release/libfemtorelay_capi.a -lpthread -lm -ldl -o demo
 */
#include <stdio.h>
#include <stdlib.h>

#include "femtorelay.h"

static void check(fr_status status, const char *what) {
    if (status != FR_OK) {
        fprintf(stderr, "%s: %s\n", what, fr_status_message(status));
        exit(1);
    }
}

int main(void) {
    printf("femtorelay %s\n", fr_version());

    /* one explicit realization: the macro user swamps the femto station */
    fr_snr snr = {.gamma_uf = 3.0, .gamma_vf = 3.0, .gamma_ub = 3.0};
    fr_backhaul pipes = {.c_up = 2.0, .c_down = 2.0};

    fr_scheme_report report;
    check(fr_evaluate_scheme(FR_SCHEME_DF, snr, pipes, &report), "evaluate");
    printf("decode-and-forward corners: UV (%.6f, %.6f), VU (%.6f, %.6f)\n",
           report.uv.r_u, report.uv.r_v, report.vu.r_u, report.vu.r_v);
    printf("max-min point: (%.6f, %.6f) at UV fraction %.3f\n",
           report.max_min.r_u, report.max_min.r_v, report.max_min.lambda_uv);

    /* a small deterministic sweep over the forward pipe */
    const double values[] = {0.5, 2.0, 8.0};
    fr_scenario *scenario = NULL;
    check(fr_scenario_new_backhaul_sweep(values, 3, 3.0, &scenario), "new scenario");
    check(fr_scenario_set_trials(scenario, 500), "set trials");
    check(fr_scenario_set_seed(scenario, 42), "set seed");

    fr_summary *summary = NULL;
    check(fr_scenario_run(scenario, &summary), "run");

    char *csv = NULL;
    check(fr_summary_csv(summary, &csv), "render");
    printf("%s", csv);

    fr_string_free(csv);
    fr_summary_free(summary);
    fr_scenario_free(scenario);
    return 0;
}
