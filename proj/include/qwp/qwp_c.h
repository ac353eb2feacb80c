/* C interface to the quasi-analytic wavelet-packet library.
 *
 * All functions return a qwp_status; QWP_OK means success.  On failure a
 * thread-local message is available via qwp_last_error().  Objects returned
 * through out-parameters are owned by the caller and must be released with
 * the matching *_free function.  Images are square, row-major double arrays.
 */
#ifndef QWP_C_H
#define QWP_C_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qwp_status {
  QWP_OK = 0,
  QWP_ERR_ARG = 2,     /* invalid argument or malformed request */
  QWP_ERR_IO = 3,      /* file could not be read or written */
  QWP_ERR_NUMERIC = 4, /* numeric failure (non-finite data, CG breakdown) */
} qwp_status;

typedef enum qwp_forest_kind {
  QWP_FOREST_WP1D = 0,
  QWP_FOREST_QWP1D = 1,
  QWP_FOREST_WP2D = 2,
  QWP_FOREST_QWP2D = 3,
} qwp_forest_kind;

typedef struct qwp_forest qwp_forest; /* opaque coefficient container */

const char* qwp_version(void);
const char* qwp_status_str(qwp_status status);
const char* qwp_last_error(void); /* detail for the last failure on this thread */

/* ---- transforms -------------------------------------------------------- */

/* order is the even spline order 2r (2..12); levels the decomposition depth.
 * directional != 0 selects the dual-tree transform, 0 the tensor packets.
 * extend != 0 mirrors the image to twice its size before transforming. */
qwp_status qwp_forward_1d(const double* signal, uint64_t n, int order, int levels,
                          int directional, qwp_forest** out);
qwp_status qwp_forward_2d(const double* image, uint64_t n, int order, int levels,
                          int directional, int extend, qwp_forest** out);

qwp_status qwp_inverse_1d(const qwp_forest* forest, double* signal_out);
qwp_status qwp_inverse_2d(const qwp_forest* forest, double* image_out);

void qwp_forest_free(qwp_forest* forest);

/* ---- forest introspection --------------------------------------------- */

qwp_status qwp_forest_info(const qwp_forest* forest, qwp_forest_kind* kind, uint64_t* n,
                           uint64_t* out_n, int* order, int* levels);

/* Number of stored bands at one level, per tree for the dual kinds. */
qwp_status qwp_forest_band_count(const qwp_forest* forest, int level, uint64_t* count);

/* Energy (sum of squared magnitudes) of one band.  tree is 0 or 1 for the
 * dual kinds and must be 0 otherwise; band is the flat frequency-ordered
 * index (j * 2^level + l in 2D). */
qwp_status qwp_forest_band_energy(const qwp_forest* forest, int tree, int level, uint64_t band,
                                  double* energy);

/* ---- container I/O ----------------------------------------------------- */

qwp_status qwp_forest_save(const qwp_forest* forest, const char* path);
qwp_status qwp_forest_load(const char* path, qwp_forest** out);

/* ---- quality ----------------------------------------------------------- */

/* Peak-255 PSNR in dB, capped at 400 for identical inputs. */
qwp_status qwp_psnr(const double* a, const double* b, uint64_t count, double* out_db);

/* ---- directional atoms -------------------------------------------------- */

/* Writes the n*n real part, imaginary part, and spectrum magnitude of a
 * directional atom (any output pointer may be NULL) plus its orientation
 * vector.  sign is +1 or -1. */
qwp_status qwp_atom_2d(uint64_t n, int order, int level, uint64_t j, uint64_t l, int sign,
                       double* vartheta, double* theta, double* mag_spectrum, long* kappa0,
                       long* nu0);

/* Distinct orientation count at one level: 2 (2^{level+1} - 1). */
qwp_status qwp_orientation_census(uint64_t n, int order, int level, uint64_t* directions);

/* ---- denoising ---------------------------------------------------------- */

typedef struct qwp_denoise_params {
  int order;
  int levels;
  int directional;    /* dual-tree when nonzero */
  int cost;           /* 0 = entropy, 1 = l1 */
  int extend;         /* symmetric extension */
  uint64_t rank;      /* 1-based rank L in the ascending magnitude sort */
} qwp_denoise_params;

typedef struct qwp_denoise_report {
  double threshold_plus;
  double threshold_minus; /* 0 for the tensor path */
  double psnr_vs_ref;     /* -1 when no reference was given */
  /* semicolon-separated "m,j,l" triples; free with qwp_string_free */
  char* basis_plus;
  char* basis_minus;
} qwp_denoise_report;

qwp_status qwp_denoise(const double* noisy, uint64_t n, const qwp_denoise_params* params,
                       const double* reference, double* image_out, qwp_denoise_report* report);

void qwp_string_free(char* s);

/* ---- restoration -------------------------------------------------------- */

typedef struct qwp_sbi_params {
  int order;
  int levels;
  double lambda;
  double mu;
  int outer_iters;
  int cg_iters;
  double cg_tol;  /* <= 0 picks the default 1e-6 */
  int extend;
} qwp_sbi_params;

/* mask: n*n bytes, nonzero = observed; NULL means fully observed.
 * kernel: kh*kw row-major taps with odd kh, kw; NULL means identity.
 * trace: outer_iters rows of {objective, cg relative residual, psnr}; may be
 * NULL.  psnr entries are -1 without a reference. */
qwp_status qwp_sbi_restore(const double* degraded, uint64_t n, const uint8_t* mask,
                           const double* kernel, int kh, int kw,
                           const qwp_sbi_params* params, const double* reference,
                           double* image_out, double* trace);

/* Periodic convolution of an n*n image with a kh*kw kernel (odd dims, center
 * tap at the middle).  adjoint nonzero applies the transposed operator. */
qwp_status qwp_convolve(const double* image, uint64_t n, const double* kernel, int kh, int kw,
                        int adjoint, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QWP_C_H */
