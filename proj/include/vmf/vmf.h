/* C interface to the vmfilt library. All objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every call
 * returns a vmf_status; on failure vmf_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread). */
#ifndef VMF_VMF_H
#define VMF_VMF_H

#include <stddef.h>

#if defined(VMF_BUILDING_LIBRARY)
#define VMF_API __attribute__((visibility("default")))
#else
#define VMF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  VMF_OK = 0,
  VMF_ERR_VALIDATION = 2,
  VMF_ERR_NUMERICAL = 3,
  VMF_ERR_IO = 4,
  VMF_ERR_INTERNAL = 5
} vmf_status;

typedef struct vmf_filter vmf_filter;
typedef struct vmf_image vmf_image;
typedef struct vmf_detections vmf_detections;

VMF_API const char* vmf_last_error(void);
/* Strings returned through char** are malloc'd; release with vmf_string_free. */
VMF_API void vmf_string_free(char* s);

/* ---- filters ---- */

typedef struct {
  const char* family; /* interp_diff, gaussian_fir, fir_vm_bank, colored_sg, repeated_pole,
                         butterworth, blunt_exponential, butterworth_appendix */
  double sigma;
  int D;
  int L_pi_bar;
  int d;
  int K;           /* 0 = family default */
  int behind_blur; /* fir_vm_bank only */
} vmf_design_params;

VMF_API vmf_design_params vmf_design_params_default(void);
VMF_API vmf_status vmf_filter_design(const vmf_design_params* p, vmf_filter** out);
VMF_API vmf_status vmf_filter_from_json(const char* text, vmf_filter** out);
VMF_API vmf_status vmf_filter_load(const char* path, vmf_filter** out);
VMF_API vmf_status vmf_filter_to_json(const vmf_filter* f, char** out);
VMF_API vmf_status vmf_filter_save(const vmf_filter* f, const char* path);
VMF_API void vmf_filter_free(vmf_filter* f);

/* 1 for recursive (three-part) filters, 0 for FIR. */
VMF_API int vmf_filter_is_iir(const vmf_filter* f);
/* FIR taps h(-K)..h(K), or the truncated impulse response of an IIR filter.
 * Pass taps = NULL to query the length. */
VMF_API vmf_status vmf_filter_taps(const vmf_filter* f, double* taps, size_t* len);
/* rho_l = d^l H / d omega^l at dc for l = 0..l_max (l_max <= 12). */
VMF_API vmf_status vmf_filter_dc_derivatives(const vmf_filter* f, int l_max, double* re, double* im);
/* Human-readable moment summary, (1/l!) sum_m (-m)^l h(m) for l < n_moments. */
VMF_API vmf_status vmf_filter_moment_summary(const vmf_filter* f, int n_moments, char** out);
/* CSV of the frequency response over [-pi, pi] (dims 1 or 2) or of the impulse response. */
VMF_API vmf_status vmf_filter_response_csv(const vmf_filter* f, int n_points, int dims, char** out);
VMF_API vmf_status vmf_filter_impulse_csv(const vmf_filter* f, int half, char** out);

/* ---- images ---- */

VMF_API vmf_status vmf_image_create(int width, int height, double fill, vmf_image** out);
/* PGM (P2/P5) or raw float32, chosen by the file's magic bytes. */
VMF_API vmf_status vmf_image_read(const char* path, vmf_image** out);
VMF_API vmf_status vmf_image_write_pgm(const vmf_image* img, const char* path);
VMF_API vmf_status vmf_image_write_raw(const vmf_image* img, const char* path);
VMF_API int vmf_image_width(const vmf_image* img);
VMF_API int vmf_image_height(const vmf_image* img);
/* Row-major pixel storage, width * height doubles. */
VMF_API double* vmf_image_data(vmf_image* img);
VMF_API void vmf_image_free(vmf_image* img);

/* Filters rows with fx and columns with fy; either may be NULL to skip that
 * axis. crop_border > 0 trims that many pixels from every edge afterwards. */
VMF_API vmf_status vmf_apply(const vmf_image* img, const vmf_filter* fx, const vmf_filter* fy, int threads, int crop_border,
                     vmf_image** out);

/* Renders {"preset": "ecc2"|"ecc4"} or an explicit ellipse list. */
VMF_API vmf_status vmf_scene_render(const char* json, vmf_image** out);

/* ---- blob detection ---- */

typedef struct {
  double lambda;
  const char* family;   /* blur family, default repeated_pole */
  double t1;            /* <= 0: calibrated */
  double t2;            /* < 0: lambda / 4 */
  int bright;           /* 0: dark blobs on a light background */
  int threads;
  int crop_border;
  int suppress;         /* non-maximum suppression within lambda / 2 */
  double calibration_eccentricity;
} vmf_detect_params;

typedef struct {
  int x, y;
  double dx, dy;
  double ndet;
  double lambda;
} vmf_detection;

VMF_API vmf_detect_params vmf_detect_params_default(void);
VMF_API vmf_status vmf_detect(const vmf_image* img, const vmf_detect_params* p, vmf_detections** out);
VMF_API size_t vmf_detections_count(const vmf_detections* d);
VMF_API vmf_status vmf_detections_get(const vmf_detections* d, size_t i, vmf_detection* out);
VMF_API vmf_status vmf_detections_jsonl(const vmf_detections* d, char** out);
VMF_API vmf_status vmf_detections_overlay(const vmf_image* img, const vmf_detections* d, vmf_image** out);
VMF_API void vmf_detections_free(vmf_detections* d);

/* ---- benchmark ---- */

typedef struct {
  int width;
  int height;
  int repetitions;
  int max_threads; /* 0: hardware parallelism */
  int stage2;
} vmf_bench_params;

typedef struct {
  double iir_spread;
  int fir_increasing;
  double speedup_single;
  double speedup_max;
  int max_threads;
} vmf_bench_trends;

VMF_API vmf_bench_params vmf_bench_params_default(void);
/* csv and warnings (newline separated, possibly empty) are always set on success. */
VMF_API vmf_status vmf_bench_run(const vmf_bench_params* p, char** csv, vmf_bench_trends* trends, char** warnings);

VMF_API int vmf_hardware_threads(void);

#ifdef __cplusplus
}
#endif

#endif
