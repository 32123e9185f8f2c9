// Command-line front end. Talks to the library through the C interface only.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vmf/vmf.h"

namespace {

struct Failure {
  vmf_status status;
  bool reported = false;
};

void check(vmf_status s) {
  if (s != VMF_OK) throw Failure{s};
}

int exit_code(vmf_status s) {
  switch (s) {
    case VMF_ERR_VALIDATION:
    case VMF_ERR_IO:
      return 2;
    case VMF_ERR_NUMERICAL:
      return 3;
    default:
      return 1;
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  vmf_string_free(s);
  return out;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    throw Failure{VMF_ERR_IO, true};
  }
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
    throw Failure{VMF_ERR_IO, true};
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void save_image(const vmf_image* img, const std::string& path) {
  check(ends_with(path, ".raw") || ends_with(path, ".f32") ? vmf_image_write_raw(img, path.c_str())
                                                           : vmf_image_write_pgm(img, path.c_str()));
}

// Holds one handle and frees it on scope exit.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() {
    if (p) Free(p);
  }
};
using FilterH = Handle<vmf_filter, vmf_filter_free>;
using ImageH = Handle<vmf_image, vmf_image_free>;
using DetH = Handle<vmf_detections, vmf_detections_free>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vmfilt: vanishing-moment image filters and blob detection"};
  app.require_subcommand(1);

  // design
  auto* design = app.add_subcommand("design", "Design a filter and write its coefficient JSON");
  std::string d_family = "repeated_pole", d_out;
  double d_sigma = 8.0;
  int d_D = 3, d_Lpi = 2, d_d = 0, d_K = 0;
  bool d_behind = false;
  design->add_option("--family", d_family, "Filter family")->capture_default_str();
  design->add_option("--sigma", d_sigma, "Scale in pixels (lambda for the appendix families)")->capture_default_str();
  design->add_option("--D", d_D, "Model order (odd)")->capture_default_str();
  design->add_option("--L-pi", d_Lpi, "Vanishing moments at pi (L_pi_bar)")->capture_default_str();
  design->add_option("--d", d_d, "Derivative order (interp_diff, gaussian_fir, fir_vm_bank)")->capture_default_str();
  design->add_option("--K", d_K, "Half-length or order; 0 picks the family default")->capture_default_str();
  design->add_flag("--behind-blur", d_behind, "fir_vm_bank: design for use behind a blur");
  design->add_option("--out", d_out, "Output JSON path (default: standard output)");

  // apply
  auto* apply = app.add_subcommand("apply", "Filter an image separably");
  std::string a_in, a_out, a_filter, a_fx, a_fy;
  int a_threads = 1, a_crop = 0;
  apply->add_option("--input", a_in, "Input PGM or raw float32")->required();
  apply->add_option("--output", a_out, "Output path (.raw/.f32 for float32, otherwise PGM)")->required();
  apply->add_option("--filter", a_filter, "Coefficient JSON applied along both axes");
  apply->add_option("--filter-x", a_fx, "Coefficient JSON for rows");
  apply->add_option("--filter-y", a_fy, "Coefficient JSON for columns");
  apply->add_option("--threads", a_threads, "Worker threads")->capture_default_str();
  apply->add_option("--crop-border", a_crop, "Pixels trimmed from every edge")->capture_default_str();

  // detect
  auto* detect = app.add_subcommand("detect", "Detect blobs at one scale");
  std::string t_in, t_out, t_overlay, t_family = "repeated_pole", t_polarity = "dark";
  double t_lambda = 16.0, t_t1 = 0.0, t_t2 = -1.0, t_ecc = 2.0;
  int t_threads = 1, t_crop = 0;
  bool t_no_nms = false;
  detect->add_option("--input", t_in, "Input PGM or raw float32")->required();
  detect->add_option("--lambda", t_lambda, "Target blob scale in pixels")->capture_default_str();
  detect->add_option("--family", t_family, "Blur family")->capture_default_str();
  detect->add_option("--t1", t_t1, "Threshold #1 on the normalized determinant; 0 calibrates")->capture_default_str();
  detect->add_option("--t2", t_t2, "Threshold #2 on the displacement; negative selects lambda/4")->capture_default_str();
  detect->add_option("--polarity", t_polarity, "dark or bright blobs")->capture_default_str();
  detect->add_option("--calibration-ecc", t_ecc, "Eccentricity of the blob used to calibrate t1")->capture_default_str();
  detect->add_option("--threads", t_threads, "Worker threads")->capture_default_str();
  detect->add_option("--crop-border", t_crop, "Ignore detections this close to the edge")->capture_default_str();
  detect->add_flag("--no-nms", t_no_nms, "Keep every pixel that passes the thresholds");
  detect->add_option("--output", t_out, "JSON-lines output (default: standard output)");
  detect->add_option("--overlay", t_overlay, "Write a PGM with detections marked");

  // respond
  auto* respond = app.add_subcommand("respond", "Frequency or impulse response as CSV");
  std::string r_coeffs, r_out;
  int r_points = 256, r_dims = 1, r_impulse = -1;
  respond->add_option("--coeffs", r_coeffs, "Coefficient JSON")->required();
  respond->add_option("--points", r_points, "Grid points per axis")->capture_default_str();
  respond->add_option("--dims", r_dims, "1 or 2")->capture_default_str();
  respond->add_option("--impulse", r_impulse, "Emit the impulse response over -N..N instead");
  respond->add_option("--out", r_out, "CSV path (default: standard output)");

  // bench
  auto* bench = app.add_subcommand("bench", "Time FIR vs IIR blurs across scales");
  std::string b_out;
  int b_w = 2048, b_h = 2048, b_reps = 5, b_threads = 0;
  bool b_no_stage2 = false;
  bench->add_option("--width", b_w, "Image width")->capture_default_str();
  bench->add_option("--height", b_h, "Image height")->capture_default_str();
  bench->add_option("--reps", b_reps, "Repetitions per timing (median, at least 5)")->capture_default_str();
  bench->add_option("--threads", b_threads, "Largest thread count; 0 uses hardware parallelism")->capture_default_str();
  bench->add_flag("--no-stage2", b_no_stage2, "Skip the differentiator + Hessian stage");
  bench->add_option("--out", b_out, "CSV path (default: standard output)");

  // scene
  auto* scene = app.add_subcommand("scene", "Render a synthetic ellipse scene");
  std::string s_spec, s_preset, s_out;
  scene->add_option("--spec", s_spec, "Scene JSON");
  scene->add_option("--preset", s_preset, "ecc2 or ecc4");
  scene->add_option("--output", s_out, "Output image")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*design) {
      vmf_design_params p = vmf_design_params_default();
      p.family = d_family.c_str();
      p.sigma = d_sigma;
      p.D = d_D;
      p.L_pi_bar = d_Lpi;
      p.d = d_d;
      p.K = d_K;
      p.behind_blur = d_behind ? 1 : 0;
      FilterH f;
      check(vmf_filter_design(&p, &f.p));
      char* json = nullptr;
      check(vmf_filter_to_json(f.p, &json));
      char* summary = nullptr;
      check(vmf_filter_moment_summary(f.p, d_D + 2, &summary));
      if (d_out.empty()) {
        write_or_print("", take(json) + "\n");
        std::fputs(take(summary).c_str(), stderr);
      } else {
        write_or_print(d_out, take(json) + "\n");
        std::fputs(take(summary).c_str(), stdout);
      }
    } else if (*apply) {
      if (a_filter.empty() && a_fx.empty() && a_fy.empty()) {
        std::fprintf(stderr, "error: give --filter or --filter-x/--filter-y\n");
        return 2;
      }
      ImageH img, out;
      FilterH fx, fy;
      check(vmf_image_read(a_in.c_str(), &img.p));
      const std::string px = a_fx.empty() ? a_filter : a_fx;
      const std::string py = a_fy.empty() ? a_filter : a_fy;
      if (!px.empty()) check(vmf_filter_load(px.c_str(), &fx.p));
      if (!py.empty()) check(vmf_filter_load(py.c_str(), &fy.p));
      check(vmf_apply(img.p, fx.p, fy.p, a_threads, a_crop, &out.p));
      save_image(out.p, a_out);
    } else if (*detect) {
      ImageH img;
      check(vmf_image_read(t_in.c_str(), &img.p));
      vmf_detect_params p = vmf_detect_params_default();
      p.lambda = t_lambda;
      p.family = t_family.c_str();
      p.t1 = t_t1;
      p.t2 = t_t2;
      if (t_polarity != "dark" && t_polarity != "bright") {
        std::fprintf(stderr, "error: --polarity must be dark or bright\n");
        return 2;
      }
      p.bright = t_polarity == "bright";
      p.threads = t_threads;
      p.crop_border = t_crop;
      p.suppress = t_no_nms ? 0 : 1;
      p.calibration_eccentricity = t_ecc;
      DetH dets;
      check(vmf_detect(img.p, &p, &dets.p));
      char* jsonl = nullptr;
      check(vmf_detections_jsonl(dets.p, &jsonl));
      write_or_print(t_out, take(jsonl));
      if (!t_overlay.empty()) {
        ImageH ov;
        check(vmf_detections_overlay(img.p, dets.p, &ov.p));
        check(vmf_image_write_pgm(ov.p, t_overlay.c_str()));
      }
      std::fprintf(stderr, "%zu detections\n", vmf_detections_count(dets.p));
    } else if (*respond) {
      FilterH f;
      check(vmf_filter_load(r_coeffs.c_str(), &f.p));
      char* csv = nullptr;
      if (r_impulse >= 0)
        check(vmf_filter_impulse_csv(f.p, r_impulse, &csv));
      else
        check(vmf_filter_response_csv(f.p, r_points, r_dims, &csv));
      write_or_print(r_out, take(csv));
    } else if (*bench) {
      vmf_bench_params p = vmf_bench_params_default();
      p.width = b_w;
      p.height = b_h;
      p.repetitions = b_reps;
      p.max_threads = b_threads;
      p.stage2 = b_no_stage2 ? 0 : 1;
      char* csv = nullptr;
      char* warn = nullptr;
      vmf_bench_trends t;
      check(vmf_bench_run(&p, &csv, &t, &warn));
      std::fputs(take(warn).c_str(), stderr);
      write_or_print(b_out, take(csv));
      std::fprintf(stderr,
                   "iir spread %.3f (< 1.15), fir increasing %s, speedup@max sigma: 1 thread %.2fx, %d threads %.2fx\n",
                   t.iir_spread, t.fir_increasing ? "yes" : "no", t.speedup_single, t.max_threads, t.speedup_max);
    } else if (*scene) {
      std::string json;
      if (!s_preset.empty())
        json = "{\"preset\": \"" + s_preset + "\"}";
      else if (!s_spec.empty())
        json = read_file(s_spec);
      else {
        std::fprintf(stderr, "error: give --spec or --preset\n");
        return 2;
      }
      ImageH img;
      check(vmf_scene_render(json.c_str(), &img.p));
      save_image(img.p, s_out);
    }
  } catch (const Failure& f) {
    if (!f.reported) std::fprintf(stderr, "error: %s\n", vmf_last_error());
    return exit_code(f.status);
  }
  return 0;
}
