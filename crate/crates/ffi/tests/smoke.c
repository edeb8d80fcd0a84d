#include <math.h>
#include <stdio.h>
#include "kmsrange.h"

int main(void) {
    KmsMatrix *m = NULL;
    if (kms_matrix_new_kms(2, 3.0, 4.0, &m) != KMS_STATUS_OK) {
        fprintf(stderr, "construct: %s\n", kms_last_error_message());
        return 1;
    }
    double w = 0.0;
    if (kms_numerical_radius(m, &w, NULL) != KMS_STATUS_OK || fabs(w - 2.5) > 1e-10) {
        fprintf(stderr, "radius %.17g\n", w);
        return 1;
    }
    if (kms_matrix_new_kms(0, 1.0, 0.0, NULL) != KMS_STATUS_NULL_POINTER) {
        return 1;
    }
    kms_matrix_free(m);
    puts("ok");
    return 0;
}
