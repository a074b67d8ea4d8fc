#include <stdio.h>
#include <string.h>
#include "modext.h"

int main(void) {
    ModextCode *lam = NULL, *mu = NULL;
    if (modext_forge(2, 1, 2, &lam, &mu) != MODEXT_STATUS_OK) return 1;
    size_t n = 0;
    if (modext_code_length(lam, &n) != MODEXT_STATUS_OK || n != 3) return 2;
    bool iso = false, ext = true;
    if (modext_check(lam, mu, &iso, &ext) != MODEXT_STATUS_OK || !iso || ext) return 3;
    char *s = NULL;
    if (modext_gaussian_binomial(3, 1, 2, &s) != MODEXT_STATUS_OK || strcmp(s, "7") != 0) return 4;
    modext_string_free(s);
    if (modext_forge(2, 2, 2, &lam, &mu) != MODEXT_STATUS_DOMAIN) return 5;
    if (modext_last_error_message() == NULL) return 6;
    modext_code_free(lam);
    modext_code_free(mu);
    puts("ok");
    return 0;
}
