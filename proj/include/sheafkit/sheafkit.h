/* C interface to sheafkit.
 *
 * All objects are opaque handles released with the matching *_free function.
 * Functions return an sk_status; on failure sk_last_error() describes the
 * problem (per thread). Strings handed out through char** parameters are owned
 * by the caller and released with sk_string_free.
 */
#ifndef SHEAFKIT_SHEAFKIT_H
#define SHEAFKIT_SHEAFKIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SK_API __declspec(dllexport)
#else
#define SK_API __attribute__((visibility("default")))
#endif

typedef enum sk_status {
  SK_OK = 0,
  SK_ERR_PARSE = 1,
  SK_ERR_ARGUMENT = 2,
  SK_ERR_DEGREE = 3,
  SK_ERR_MATH = 4,
  SK_ERR_NOT_FOUND = 5,
  SK_ERR_INTERNAL = 6,
  SK_ERR_NULL = 7
} sk_status;

typedef struct sk_session sk_session;
typedef struct sk_module sk_module;
typedef struct sk_report sk_report;

SK_API const char* sk_version(void);
SK_API const char* sk_last_error(void);
/* Line of the last parse error, 0 when unknown or not a parse error. */
SK_API int sk_last_error_line(void);
SK_API void sk_string_free(char* s);

/* Sessions. `field` is NULL (use the ring line), "QQ" or "Fp:<p>". */
SK_API sk_status sk_session_parse(const char* text, const char* field, sk_session** out);
/* A session holding only `use <fixture> as <alias>`. */
SK_API sk_status sk_session_fixture(const char* fixture, const char* alias, const char* field, sk_session** out);
SK_API void sk_session_free(sk_session* s);
SK_API sk_status sk_session_ring(const sk_session* s, char** out);
/* Groebner basis of an ideal expression (order "grevlex" or "lex") or, failing
 * that, of the relations of a module expression (term over position, grevlex). */
SK_API sk_status sk_session_groebner(const sk_session* s, const char* expr, const char* order, char** out);

/* Modules. `expr` uses the session expression syntax: names, alias.key and
 * calls such as twist(M, -1). */
SK_API sk_status sk_session_module(const sk_session* s, const char* expr, sk_module** out);
SK_API void sk_module_free(sk_module* m);
SK_API sk_status sk_module_presentation(const sk_module* m, char** out);
SK_API sk_status sk_module_twist(const sk_module* m, int k, sk_module** out);
SK_API sk_status sk_module_dual(const sk_module* m, sk_module** out);
SK_API sk_status sk_module_tor(const sk_module* a, const sk_module* b, int i, sk_module** out);
SK_API sk_status sk_module_ext(const sk_module* a, const sk_module* b, int i, sk_module** out);

SK_API sk_status sk_hilbert_polynomial(const sk_module* m, char** out);
SK_API sk_status sk_hilbert_function(const sk_module* m, int d, int* out);
/* Betti table followed by the differentials of the minimal resolution. */
SK_API sk_status sk_resolution(const sk_module* m, char** out);
SK_API sk_status sk_betti(const sk_module* m, char** out);
SK_API sk_status sk_regularity(const sk_module* m, int* out);

/* dim H^q(F(d)) for the sheaf associated with m. */
SK_API sk_status sk_sheaf_cohomology(const sk_module* m, int q, int d, int* out);
/* Graded pieces dim Ext^i_S(a, b)_d and dim Tor_i^S(a, b)_d. */
SK_API sk_status sk_ext_dim(const sk_module* a, const sk_module* b, int i, int d, int* out);
SK_API sk_status sk_tor_dim(const sk_module* a, const sk_module* b, int i, int d, int* out);
/* dim Ext^i(F, G) of the associated sheaves. `agree` is the number of equal
 * consecutive truncations required (<= 0 selects the default 3); `stable_degree`
 * may be NULL. */
SK_API sk_status sk_sheaf_ext(const sk_module* a, const sk_module* b, int i, int agree, int* out, int* stable_degree);

/* sig = {h0(F(x)Omega2(2)), h0(F(x)Omega1(1)), h0(F), h0(F(-1)), h1(F)}; type is
 * "i", "ii", "iii" or "unclassified". */
SK_API sk_status sk_beilinson(const sk_module* m, int sig[5], char** type);
SK_API sk_status sk_is_planar(const sk_module* m, int* out);

/* Walls for pairs with Hilbert polynomial d*m + chi, chi_1 in [chi_lo, chi_hi].
 * JSON array of {alpha, sub, quotient, admissible, reason}; only admissible
 * walls unless include_all is nonzero. */
SK_API sk_status sk_walls(int d, int chi, int chi_lo, int chi_hi, int include_all, char** json);
/* JSON array of admissible crossings with the two extension orders. */
SK_API sk_status sk_crossing_report(int d, int chi, char** json);

/* Claims. */
SK_API sk_status sk_session_run(const sk_session* s, int agree, const char* source, sk_report** out);
SK_API sk_status sk_catalog_suite(const char* field, int agree, sk_report** out);
SK_API const char* sk_catalog_text(void);
SK_API sk_status sk_report_json(const sk_report* r, char** out);
SK_API sk_status sk_report_text(const sk_report* r, char** out);
SK_API sk_status sk_report_counts(const sk_report* r, int* pass, int* fail, int* skipped);
/* Parses a report produced by sk_report_json. */
SK_API sk_status sk_report_from_json(const char* json, sk_report** out);
SK_API void sk_report_free(sk_report* r);

#ifdef __cplusplus
}
#endif

#endif /* SHEAFKIT_SHEAFKIT_H */
