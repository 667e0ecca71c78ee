#include <stdio.h>
#include "roughlift.h"

int main(void) {
    RlPath *path = NULL;
    RlLift *lift = NULL;
    double norm = 0.0;
    char msg[256];

    if (rl_path_generate(0.4, 4.0, 3, 9, 2, &path) != RL_STATUS_OK) return 1;
    if (rl_lift(path, 0.4, 4.0, 6, &lift) != RL_STATUS_OK) return 2;
    if (rl_lift_rough_norm(lift, 0.4, 4.0, &norm) != RL_STATUS_OK || !(norm > 0.0)) return 3;
    if (rl_lift(path, 0.6, 4.0, 6, &lift) != RL_STATUS_INVALID_PARAMS) return 4;
    if (rl_last_error_message(msg, sizeof msg) == 0) return 5;
    printf("norm %g, error \"%s\"\n", norm, msg);
    rl_lift_free(lift);
    rl_path_free(path);
    return 0;
}
