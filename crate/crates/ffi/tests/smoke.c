#include <stdio.h>
#include <string.h>
#include "webcalc.h"

int main(void) {
    WebcalcAlgebra *alg = NULL;
    if (webcalc_algebra_load("clifford1", &alg) != WEBCALC_STATUS_OK) return 10;
    size_t even = 0, odd = 0, dim = 0;
    if (webcalc_algebra_dim(alg, &even, &odd) != WEBCALC_STATUS_OK || even != 1 || odd != 1) return 11;
    if (webcalc_schur_dim(alg, 2, 2, &dim) != WEBCALC_STATUS_OK || dim != 32) return 12;

    const char *argv[] = {"howe", "check", "--m", "1", "--n", "2", "--d", "2"};
    WebcalcReport *rep = NULL;
    if (webcalc_run(alg, argv, 8, &rep) != WEBCALC_STATUS_OK) return 13;
    size_t need = 0;
    if (webcalc_report_json(rep, NULL, 0, &need) != WEBCALC_STATUS_BUFFER_TOO_SMALL) return 14;
    char buf[4096];
    if (need > sizeof buf || webcalc_report_json(rep, buf, sizeof buf, NULL) != WEBCALC_STATUS_OK) return 15;
    if (!strstr(buf, "\"passed\":true")) return 16;
    webcalc_report_free(rep);

    WebcalcAlgebra *bad = NULL;
    if (webcalc_algebra_load("no-such-algebra", &bad) != WEBCALC_STATUS_INVALID_INPUT || bad != NULL) return 17;
    char msg[256];
    if (webcalc_last_error(msg, sizeof msg, NULL) != WEBCALC_STATUS_OK || strlen(msg) == 0) return 18;

    webcalc_algebra_free(alg);
    printf("ok %s\n", webcalc_version());
    return 0;
}
