/* Exercises the public C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "vmf/vmf.h"

static int failures = 0;

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static void test_design(void) {
  vmf_design_params p = vmf_design_params_default();
  vmf_filter* f = NULL;
  double re[3], im[3];
  size_t len = 0;
  double taps[3];
  char* json = NULL;
  vmf_filter* back = NULL;

  p.family = "interp_diff";
  p.d = 2;
  CHECK(vmf_filter_design(&p, &f) == VMF_OK);
  CHECK(!vmf_filter_is_iir(f));
  CHECK(vmf_filter_taps(f, NULL, &len) == VMF_OK && len == 3);
  CHECK(vmf_filter_taps(f, taps, &len) == VMF_OK);
  CHECK(taps[0] == 1.0 && taps[1] == -2.0 && taps[2] == 1.0);
  CHECK(vmf_filter_dc_derivatives(f, 2, re, im) == VMF_OK);
  CHECK(fabs(re[2] + 2.0) < 1e-12);
  vmf_filter_free(f);

  p = vmf_design_params_default();
  p.family = "repeated_pole";
  p.sigma = 8.0;
  CHECK(vmf_filter_design(&p, &f) == VMF_OK);
  CHECK(vmf_filter_is_iir(f));
  CHECK(vmf_filter_to_json(f, &json) == VMF_OK);
  CHECK(strstr(json, "b_zero") != NULL);
  CHECK(vmf_filter_from_json(json, &back) == VMF_OK);
  CHECK(vmf_filter_dc_derivatives(back, 2, re, im) == VMF_OK);
  CHECK(fabs(re[0] - 1.0) < 1e-9 && fabs(re[2]) < 1e-6);
  vmf_string_free(json);
  vmf_filter_free(back);
  vmf_filter_free(f);

  p.sigma = 0.0;
  f = NULL;
  CHECK(vmf_filter_design(&p, &f) == VMF_ERR_VALIDATION);
  CHECK(f == NULL);
  CHECK(strstr(vmf_last_error(), "sigma must be positive") != NULL);

  p = vmf_design_params_default();
  p.family = "no_such_family";
  CHECK(vmf_filter_design(&p, &f) == VMF_ERR_VALIDATION);
  CHECK(vmf_filter_from_json("{\"kind\":", &f) == VMF_ERR_VALIDATION);
  CHECK(vmf_filter_load("/nonexistent/filter.json", &f) == VMF_ERR_IO);
}

static void test_apply(void) {
  vmf_image* img = NULL;
  vmf_image* out = NULL;
  vmf_filter* f = NULL;
  vmf_design_params p = vmf_design_params_default();
  int i;

  p.family = "repeated_pole";
  p.sigma = 4.0;
  CHECK(vmf_filter_design(&p, &f) == VMF_OK);
  CHECK(vmf_image_create(40, 30, 5.0, &img) == VMF_OK);
  CHECK(vmf_apply(img, f, f, 2, 0, &out) == VMF_OK);
  CHECK(vmf_image_width(out) == 40 && vmf_image_height(out) == 30);
  for (i = 0; i < 40 * 30; ++i) CHECK(fabs(vmf_image_data(out)[i] - 5.0) < 1e-10);
  vmf_image_free(out);
  CHECK(vmf_apply(img, f, NULL, 1, 5, &out) == VMF_OK);
  CHECK(vmf_image_width(out) == 30 && vmf_image_height(out) == 20);
  vmf_image_free(out);
  CHECK(vmf_apply(img, f, f, 1, 20, &out) == VMF_ERR_VALIDATION);
  CHECK(vmf_image_create(0, 3, 0.0, &out) == VMF_ERR_VALIDATION);
  CHECK(vmf_image_read("/nonexistent/x.pgm", &out) == VMF_ERR_IO);
  vmf_image_free(img);
  vmf_filter_free(f);
}

static void test_detect(void) {
  vmf_image* img = NULL;
  vmf_detections* d = NULL;
  vmf_detection one;
  vmf_detect_params p = vmf_detect_params_default();
  char* lines = NULL;
  const char* scene =
      "{\"width\":200,\"height\":120,\"background\":1,"
      "\"ellipses\":[{\"cx\":100,\"cy\":60,\"a\":16,\"ecc\":2,\"theta_deg\":0,\"value\":0}]}";

  CHECK(vmf_scene_render(scene, &img) == VMF_OK);
  p.lambda = 16.0;
  CHECK(vmf_detect(img, &p, &d) == VMF_OK);
  CHECK(vmf_detections_count(d) == 1);
  CHECK(vmf_detections_get(d, 0, &one) == VMF_OK);
  CHECK(abs(one.x - 100) <= 1 && abs(one.y - 60) <= 1);
  CHECK(vmf_detections_get(d, 5, &one) == VMF_ERR_VALIDATION);
  CHECK(vmf_detections_jsonl(d, &lines) == VMF_OK);
  CHECK(strncmp(lines, "{\"x\":", 5) == 0);
  vmf_string_free(lines);
  vmf_detections_free(d);
  p.lambda = -1.0;
  CHECK(vmf_detect(img, &p, &d) == VMF_ERR_VALIDATION);
  vmf_image_free(img);
  CHECK(vmf_scene_render("{\"preset\":\"ecc5\"}", &img) == VMF_ERR_VALIDATION);
}

int main(void) {
  test_design();
  test_apply();
  test_detect();
  CHECK(vmf_hardware_threads() >= 1);
  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
