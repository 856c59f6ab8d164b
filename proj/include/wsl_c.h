/* C API of the weighted-Strichartz laboratory core. All rationals cross the
 * boundary as "p/q" strings; errors are negative codes with a thread-local
 * message retrievable via wsl_last_error(). */
#ifndef WSL_C_H
#define WSL_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  WSL_OK = 0,
  WSL_ERR_INVALID_ARGUMENT = -1,
  WSL_ERR_DOMAIN = -2,       /* divergent norm, unresolved oscillation, ... */
  WSL_ERR_BUFFER_SMALL = -3,
  WSL_ERR_INTERNAL = -4,
  WSL_ERR_CHECK_FAILED = -5  /* a verification subcommand found a failure */
};

/* Membership status values written by the admissibility checks. */
enum { WSL_OUTSIDE = 0, WSL_BOUNDARY = 1, WSL_INTERIOR = 2 };

const char* wsl_version(void);
const char* wsl_last_error(void);

/* Opaque exponent configuration. Keys: inv_q, inv_r, inv_qt, inv_rt, gamma,
 * gamma_t, sigma (rational strings) and dim (integer string). */
typedef struct wsl_config wsl_config;
wsl_config* wsl_config_new(void);
void wsl_config_free(wsl_config* cfg);
int wsl_config_set(wsl_config* cfg, const char* key, const char* value);

/* status receives WSL_OUTSIDE/BOUNDARY/INTERIOR; violated (optional) receives
 * a comma-separated list of violated condition names. */
int wsl_inhomogeneous_admissible(const wsl_config* cfg, int* status,
                                 char* violated, size_t violated_len);
int wsl_necessary_conditions(const wsl_config* cfg, int* status,
                             char* violated, size_t violated_len);
int wsl_ad_membership(const char* inv_q, const char* inv_r, const char* gamma,
                      const char* sigma, int* status_full, int* status_reduced);
int wsl_ac_membership(const char* inv_q, const char* inv_r, const char* gamma,
                      const char* sigma, int* status);

/* out receives the exact rational result as a string. */
int wsl_beta_exponent(const char* inv_a, const char* inv_b, const char* inv_at,
                      const char* inv_bt, const char* gamma,
                      const char* gamma_t, char* out, size_t out_len);

/* out receives "inv_q0,inv_r0,inv_qt0,inv_rt0" as rational strings. */
int wsl_wellposedness_exponents(const char* alpha, const char* delta,
                                const char* gamma0, const char* gammat0,
                                char* out, size_t out_len);

/* Full run orchestration; mirrors the CLI. config_path may be NULL (defaults).
 * Returns WSL_OK or WSL_ERR_CHECK_FAILED / a validation error. */
int wsl_run(const char* subcommand, const char* config_path,
            const char* out_dir, int jobs, unsigned long long seed);

#ifdef __cplusplus
}
#endif

#endif /* WSL_C_H */
