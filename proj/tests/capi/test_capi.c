/* Exercises the C interface from C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sheafkit/sheafkit.h"

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static const char* kSession =
    "ring x, y, z, w over QQ\n"
    "ideal I = x*y - z*w, x^2 + y^2 - z^2 - w^2\n"
    "module O_C = quotient(I)\n"
    "claim hp: hp(O_C) = 4*m\n"
    "claim bad: hp(O_C) = 4*m+1\n";

int main(void) {
  sk_session* s = NULL;
  sk_module* m = NULL;
  char* text = NULL;
  int v = -1, e = -1;

  EXPECT(strlen(sk_version()) > 0);
  EXPECT(sk_session_parse(kSession, NULL, &s) == SK_OK);
  EXPECT(sk_session_module(s, "O_C", &m) == SK_OK);

  EXPECT(sk_hilbert_polynomial(m, &text) == SK_OK);
  EXPECT(text && strcmp(text, "4*m") == 0);
  sk_string_free(text);

  EXPECT(sk_hilbert_function(m, 3, &v) == SK_OK && v == 12);
  EXPECT(sk_regularity(m, &v) == SK_OK && v == 2);
  EXPECT(sk_sheaf_cohomology(m, 1, 0, &v) == SK_OK && v == 1);
  EXPECT(sk_sheaf_cohomology(m, 7, 0, &v) == SK_ERR_ARGUMENT);
  EXPECT(strlen(sk_last_error()) > 0);

  {
    sk_module* twisted = NULL;
    EXPECT(sk_module_twist(m, 1, &twisted) == SK_OK);
    EXPECT(sk_hilbert_function(twisted, 0, &v) == SK_OK && v == 4);
    sk_module_free(twisted);
  }

  /* Ext^0(O_C, O_C) of the sheaf is one-dimensional: O_C has only constants as endomorphisms. */
  EXPECT(sk_sheaf_ext(m, m, 0, 0, &v, &e) == SK_OK && v == 1);

  EXPECT(sk_session_groebner(s, "I", "lex", &text) == SK_OK);
  EXPECT(text && strstr(text, "x*y") != NULL);
  sk_string_free(text);

  /* Claims and the report round trip. */
  {
    sk_report* r = NULL;
    sk_report* back = NULL;
    int pass = 0, fail = 0, skipped = 0;
    EXPECT(sk_session_run(s, 0, "capi", &r) == SK_OK);
    EXPECT(sk_report_counts(r, &pass, &fail, &skipped) == SK_OK);
    EXPECT(pass == 1 && fail == 1 && skipped == 0);
    EXPECT(sk_report_json(r, &text) == SK_OK);
    EXPECT(sk_report_from_json(text, &back) == SK_OK);
    sk_string_free(text);
    EXPECT(sk_report_counts(back, &pass, &fail, &skipped) == SK_OK && pass == 1 && fail == 1);
    sk_report_free(back);
    sk_report_free(r);
  }

  /* Fixtures and walls. */
  {
    sk_session* f = NULL;
    sk_module* F = NULL;
    int sig[5];
    char* type = NULL;
    EXPECT(sk_session_fixture("f4_e2b_sheaf", "fx", NULL, &f) == SK_OK);
    EXPECT(sk_session_module(f, "fx.F", &F) == SK_OK);
    EXPECT(sk_beilinson(F, sig, &type) == SK_OK);
    EXPECT(type && strcmp(type, "i") == 0);
    EXPECT(sig[2] == 1 && sig[3] == 0);
    sk_string_free(type);
    EXPECT(sk_is_planar(F, &v) == SK_OK && v == 0);
    sk_module_free(F);
    sk_session_free(f);
    EXPECT(sk_session_fixture("nope", "fx", NULL, &f) == SK_ERR_NOT_FOUND);
  }
  EXPECT(sk_walls(4, 1, -7, 9, 0, &text) == SK_OK);
  EXPECT(text && strstr(text, "\"alpha\":\"3\"") != NULL);
  sk_string_free(text);

  /* Errors. */
  {
    sk_session* bad = NULL;
    EXPECT(sk_session_parse("ring x, y, z, w over QQ\nideal I = x + y^2\n", NULL, &bad) == SK_ERR_PARSE);
    EXPECT(bad == NULL);
    EXPECT(sk_last_error_line() == 2);
    EXPECT(sk_session_parse(kSession, "Fp:4", &bad) == SK_ERR_ARGUMENT);
    sk_module* missing = NULL;
    EXPECT(sk_session_module(s, "nothing", &missing) == SK_ERR_NOT_FOUND);
    EXPECT(missing == NULL);
    EXPECT(sk_hilbert_function(NULL, 0, &v) == SK_ERR_NULL);
  }

  sk_module_free(m);
  sk_session_free(s);
  sk_session_free(NULL);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C interface: all checks passed\n");
  return failures ? 1 : 0;
}
