#include <stdio.h>
#include <string.h>
#include "dbrauer.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, dbrauer_last_error()); return 1; } } while (0)

int main(void) {
    DbField *f = NULL;
    CHECK(dbrauer_field_new("gf(3)", &f) == DB_STATUS_OK);
    CHECK(dbrauer_field_characteristic(f) == 3);

    DbLocalForm *w = NULL;
    CHECK(dbrauer_local_form_parse(f, "dlog(t)", 32, &w) == DB_STATUS_OK);
    uint32_t inv = 99;
    CHECK(dbrauer_local_invariant(w, &inv) == DB_STATUS_OK);
    CHECK(inv == 1);

    DbLocalForm *c = NULL;
    CHECK(dbrauer_cartier(w, &c) == DB_STATUS_OK);
    char *s = NULL;
    CHECK(dbrauer_local_form_to_string(c, &s) == DB_STATUS_OK);
    printf("C(dlog t) = %s\n", s);
    dbrauer_string_free(s);

    bool solvable = true;
    DbLocalForm *sol = NULL;
    CHECK(dbrauer_solve_one_minus_c(w, &solvable, &sol) == DB_STATUS_OK);
    CHECK(!solvable && sol == NULL);

    DbGlobalForm *g = NULL;
    CHECK(dbrauer_global_form_parse(f, "dt/(t^2 - t)", &g) == DB_STATUS_OK);
    CHECK(dbrauer_residue_sum(g, &s) == DB_STATUS_OK);
    CHECK(strcmp(s, "0") == 0);
    dbrauer_string_free(s);

    DbLocalForm *bad = NULL;
    CHECK(dbrauer_local_form_parse(f, "t^", 32, &bad) == DB_STATUS_PARSE);
    CHECK(strlen(dbrauer_last_error()) > 0);

    DbLegendreReport r;
    CHECK(dbrauer_legendre_check(5, &r) == DB_STATUS_OK);
    CHECK(r.identity && r.series_agree);

    const char *argv[] = {"brauer", "inv", "--field", "gf(3)", "--form", "dlog(t)", "--json"};
    char *out = NULL, *err = NULL;
    CHECK(dbrauer_cli_run(7, argv, &out, &err) == 0);
    CHECK(strstr(out, "\"invariant\": 1") != NULL);
    dbrauer_string_free(out);
    dbrauer_string_free(err);

    dbrauer_global_form_free(g);
    dbrauer_local_form_free(c);
    dbrauer_local_form_free(w);
    dbrauer_field_free(f);
    puts("ok");
    return 0;
}
