#include <stdio.h>
#include <string.h>

#include "zerosum.h"

int main(void) {
    ZsPair *p = NULL;
    if (zs_pair_parse("7^3 1^2 | 6^3 5", &p) != ZS_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", zs_last_error());
        return 1;
    }
    bool irreducible = false;
    zs_pair_is_irreducible(p, &irreducible);
    char *text = zs_pair_to_text(p);
    printf("%s irreducible=%d length=%llu\n", text, irreducible,
           (unsigned long long)zs_pair_length(p));
    zs_string_free(text);

    ZsPair *q = NULL;
    if (zs_derive_product(p, "7,6^3", &q) != ZS_STATUS_OK) {
        fprintf(stderr, "derive: %s\n", zs_last_error());
        return 1;
    }
    text = zs_pair_to_text(q);
    printf("derived %s\n", text);
    zs_string_free(text);
    zs_pair_free(q);
    zs_pair_free(p);

    ZsReport *r = NULL;
    if (zs_compute_ell(3, ZS_MODE_BRUTE, 0, &r) != ZS_STATUS_OK) {
        fprintf(stderr, "ell: %s\n", zs_last_error());
        return 1;
    }
    printf("ell(3)=%llu\n", (unsigned long long)zs_report_ell(r));
    zs_report_free(r);

    if (zs_pair_parse("1 x | 1", &p) != ZS_STATUS_PARSE_ERROR) {
        return 1;
    }
    printf("error: %s\n", zs_last_error());
    return 0;
}
