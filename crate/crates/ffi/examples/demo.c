/* Minimal consumer of the fploc C API: load a radio map, estimate a position
 * from one RSS measurement, smooth it.
 *
 * Build (from crates/ffi/):
 *   cargo build --release -p fploc-ffi
 *   cc examples/demo.c -Iinclude -L../../target/release -lfploc_ffi -lm -o demo
 *
 * Run against a map produced by the CLI pipeline (see the repository README):
 *   LD_LIBRARY_PATH=../../target/release ./demo ../../out/map.json
 */

#include <stdio.h>
#include <stdlib.h>

#include "fploc.h"

static void die(const char *stage) {
    fprintf(stderr, "%s: %s\n", stage, fploc_last_error());
    exit(1);
}

int main(int argc, char **argv) {
    if (argc != 2) {
        fprintf(stderr, "usage: %s <map.json>\n", argv[0]);
        return 2;
    }

    FplocRadioMap *map = NULL;
    if (fploc_radio_map_load(argv[1], &map) != FPLOC_STATUS_OK) {
        die("load");
    }
    printf("fploc %s: %zu grid points at %.2f m spacing\n", fploc_version(),
           fploc_radio_map_point_count(map), fploc_radio_map_spacing(map));

    FplocLocalizer *localizer = NULL;
    if (fploc_localizer_new(map, 3, 2, 1e-9, &localizer) != FPLOC_STATUS_OK) {
        die("localizer");
    }
    fploc_radio_map_free(map); /* the localizer keeps its own copy */

    FplocSmoother *smoother = NULL;
    if (fploc_smoother_new(5, &smoother) != FPLOC_STATUS_OK) {
        die("smoother");
    }

    const char *anchors[] = {"a1", "a2", "a3", "a4"};
    const double levels[] = {-52.0, -71.0, -60.0, -75.0};
    double x, y;
    enum FplocStatus status =
        fploc_localize(localizer, 0.0, anchors, levels, 4, &x, &y);
    if (status == FPLOC_STATUS_NO_ELIGIBLE_POINTS) {
        fprintf(stderr, "no estimate: %s\n", fploc_last_error());
    } else if (status != FPLOC_STATUS_OK) {
        die("localize");
    } else {
        fploc_smoother_push(smoother, x, y, &x, &y);
        printf("estimate: (%.2f, %.2f)\n", x, y);
    }

    fploc_smoother_free(smoother);
    fploc_localizer_free(localizer);
    return 0;
}
