#include "vmf/vmf.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "vmf/analysis.hpp"
#include "vmf/blob.hpp"
#include "vmf/design.hpp"
#include "vmf/engine.hpp"
#include "vmf/error.hpp"
#include "vmf/harness.hpp"
#include "vmf/serialize.hpp"

struct vmf_filter {
  vmf::Filter1D f;
};
struct vmf_image {
  vmf::Image img;
};
struct vmf_detections {
  std::vector<vmf::Detection> d;
};

namespace {

thread_local std::string g_last_error;

vmf_status fail(vmf_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
vmf_status guard(F&& fn) {
  try {
    fn();
    return VMF_OK;
  } catch (const vmf::ValidationError& e) {
    return fail(VMF_ERR_VALIDATION, e.what());
  } catch (const vmf::NumericalError& e) {
    return fail(VMF_ERR_NUMERICAL, e.what());
  } catch (const vmf::IoError& e) {
    return fail(VMF_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VMF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VMF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VMF_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (!p) throw vmf::ValidationError(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int derivative_order(const vmf::Filter1D& f) {
  if (const auto* k = std::get_if<vmf::FirKernel>(&f)) return k->derivative_order;
  return vmf::parity_of(f) == vmf::Parity::symmetric ? 0 : 1;
}

}  // namespace

extern "C" {

const char* vmf_last_error(void) { return g_last_error.c_str(); }
void vmf_string_free(char* s) { std::free(s); }
int vmf_hardware_threads(void) { return vmf::hardware_threads(); }

vmf_design_params vmf_design_params_default(void) {
  vmf_design_params p;
  p.family = "repeated_pole";
  p.sigma = 8.0;
  p.D = 3;
  p.L_pi_bar = 2;
  p.d = 0;
  p.K = 0;
  p.behind_blur = 0;
  return p;
}

vmf_status vmf_filter_design(const vmf_design_params* p, vmf_filter** out) {
  return guard([&] {
    require(p, "params");
    require(out, "out");
    require(p->family, "family");
    vmf::DesignSpec spec;
    spec.family = vmf::family_from_string(p->family);
    spec.sigma = p->sigma;
    spec.D = p->D;
    spec.L_pi_bar = p->L_pi_bar;
    spec.d = p->d;
    spec.K = p->K;
    spec.mode = p->behind_blur ? vmf::CascadeMode::behind_blur : vmf::CascadeMode::standalone;
    *out = new vmf_filter{vmf::design(spec)};
  });
}

vmf_status vmf_filter_from_json(const char* text, vmf_filter** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new vmf_filter{vmf::filter_from_json(text)};
  });
}

vmf_status vmf_filter_load(const char* path, vmf_filter** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new vmf_filter{vmf::filter_from_json(vmf::read_text_file(path))};
  });
}

vmf_status vmf_filter_to_json(const vmf_filter* f, char** out) {
  return guard([&] {
    require(f, "filter");
    require(out, "out");
    *out = dup_string(vmf::to_json(f->f));
  });
}

vmf_status vmf_filter_save(const vmf_filter* f, const char* path) {
  return guard([&] {
    require(f, "filter");
    require(path, "path");
    vmf::write_text_file(path, vmf::to_json(f->f) + "\n");
  });
}

void vmf_filter_free(vmf_filter* f) { delete f; }

int vmf_filter_is_iir(const vmf_filter* f) { return f && std::holds_alternative<vmf::ThreePartIIR>(f->f) ? 1 : 0; }

vmf_status vmf_filter_taps(const vmf_filter* f, double* taps, size_t* len) {
  return guard([&] {
    require(f, "filter");
    require(len, "len");
    const auto t = vmf::effective_taps(f->f);
    if (taps) {
      if (*len < t.size()) throw vmf::ValidationError("tap buffer too small");
      std::copy(t.begin(), t.end(), taps);
    }
    *len = t.size();
  });
}

vmf_status vmf_filter_dc_derivatives(const vmf_filter* f, int l_max, double* re, double* im) {
  return guard([&] {
    require(f, "filter");
    require(re, "re");
    require(im, "im");
    const auto* iir = std::get_if<vmf::ThreePartIIR>(&f->f);
    const auto rho = iir ? vmf::dc_derivatives(*iir, vmf::EvalPoint::dc, l_max)
                         : vmf::dc_derivatives(vmf::to_rational(f->f), vmf::EvalPoint::dc, l_max);
    for (std::size_t l = 0; l < rho.size(); ++l) {
      re[l] = rho[l].real();
      im[l] = rho[l].imag();
    }
  });
}

vmf_status vmf_filter_moment_summary(const vmf_filter* f, int n_moments, char** out) {
  return guard([&] {
    require(f, "filter");
    require(out, "out");
    if (n_moments < 1 || n_moments > 13) throw vmf::ValidationError("n_moments must lie in [1, 13]");
    int half = 0;
    const auto taps = vmf::effective_taps(f->f, &half);
    const int d = derivative_order(f->f);
    std::ostringstream s;
    s << (std::holds_alternative<vmf::ThreePartIIR>(f->f) ? "iir" : "fir") << " d=" << d << " extent=" << half << '\n';
    double fact = 1.0;
    for (int l = 0; l < n_moments; ++l) {
      if (l > 0) fact *= l;
      long double acc = 0.0L;
      for (int m = -half; m <= half; ++m)
        acc += taps[static_cast<std::size_t>(m + half)] * std::pow(static_cast<long double>(-m), l);
      char line[96];
      std::snprintf(line, sizeof line, "  l=%d  (1/l!) sum (-m)^l h(m) = % .10f\n", l, static_cast<double>(acc) / fact);
      s << line;
    }
    *out = dup_string(s.str());
  });
}

vmf_status vmf_filter_response_csv(const vmf_filter* f, int n_points, int dims, char** out) {
  return guard([&] {
    require(f, "filter");
    require(out, "out");
    const auto tf = vmf::to_rational(f->f);
    *out = dup_string(vmf::freq_grid_csv(vmf::freq_grid(tf, tf, n_points, dims), dims));
  });
}

vmf_status vmf_filter_impulse_csv(const vmf_filter* f, int half, char** out) {
  return guard([&] {
    require(f, "filter");
    require(out, "out");
    *out = dup_string(vmf::impulse_csv(f->f, half));
  });
}

vmf_status vmf_image_create(int width, int height, double fill, vmf_image** out) {
  return guard([&] {
    require(out, "out");
    *out = new vmf_image{vmf::Image(width, height, fill)};
  });
}

vmf_status vmf_image_read(const char* path, vmf_image** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new vmf_image{vmf::read_image(path)};
  });
}

vmf_status vmf_image_write_pgm(const vmf_image* img, const char* path) {
  return guard([&] {
    require(img, "image");
    require(path, "path");
    vmf::write_pgm(img->img, path);
  });
}

vmf_status vmf_image_write_raw(const vmf_image* img, const char* path) {
  return guard([&] {
    require(img, "image");
    require(path, "path");
    vmf::write_raw_f32(img->img, path);
  });
}

int vmf_image_width(const vmf_image* img) { return img ? img->img.width : 0; }
int vmf_image_height(const vmf_image* img) { return img ? img->img.height : 0; }
double* vmf_image_data(vmf_image* img) { return img ? img->img.px.data() : nullptr; }
void vmf_image_free(vmf_image* img) { delete img; }

vmf_status vmf_apply(const vmf_image* img, const vmf_filter* fx, const vmf_filter* fy, int threads, int crop_border,
                     vmf_image** out) {
  return guard([&] {
    require(img, "image");
    require(out, "out");
    if (threads < 1) throw vmf::ValidationError("threads must be at least 1");
    if (crop_border < 0) throw vmf::ValidationError("crop border must be non-negative");
    vmf::SeparableFilter sep;
    if (fx) sep.x_stages.push_back(fx->f);
    if (fy) sep.y_stages.push_back(fy->f);
    vmf::Image r = vmf::apply_separable(img->img, sep, threads);
    if (crop_border > 0) {
      if (2 * crop_border >= r.width || 2 * crop_border >= r.height)
        throw vmf::ValidationError("crop border leaves no pixels");
      vmf::Image c(r.width - 2 * crop_border, r.height - 2 * crop_border);
      for (int y = 0; y < c.height; ++y)
        for (int x = 0; x < c.width; ++x) c.at(x, y) = r.at(x + crop_border, y + crop_border);
      r = std::move(c);
    }
    *out = new vmf_image{std::move(r)};
  });
}

vmf_status vmf_scene_render(const char* json, vmf_image** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new vmf_image{vmf::render_scene(vmf::scene_from_json(json))};
  });
}

vmf_detect_params vmf_detect_params_default(void) {
  vmf_detect_params p;
  p.lambda = 16.0;
  p.family = "repeated_pole";
  p.t1 = 0.0;
  p.t2 = -1.0;
  p.bright = 0;
  p.threads = 1;
  p.crop_border = 0;
  p.suppress = 1;
  p.calibration_eccentricity = 2.0;
  return p;
}

vmf_status vmf_detect(const vmf_image* img, const vmf_detect_params* p, vmf_detections** out) {
  return guard([&] {
    require(img, "image");
    require(p, "params");
    require(out, "out");
    vmf::DetectOptions o;
    o.lambda = p->lambda;
    o.family = p->family ? vmf::family_from_string(p->family) : vmf::Family::repeated_pole;
    o.t1 = p->t1;
    o.t2 = p->t2;
    o.polarity = p->bright ? vmf::Polarity::bright : vmf::Polarity::dark;
    o.threads = p->threads;
    o.crop_border = p->crop_border;
    o.suppress = p->suppress != 0;
    o.calibration_eccentricity = p->calibration_eccentricity;
    if (o.threads < 1) throw vmf::ValidationError("threads must be at least 1");
    *out = new vmf_detections{vmf::detect(img->img, o)};
  });
}

size_t vmf_detections_count(const vmf_detections* d) { return d ? d->d.size() : 0; }

vmf_status vmf_detections_get(const vmf_detections* d, size_t i, vmf_detection* out) {
  return guard([&] {
    require(d, "detections");
    require(out, "out");
    if (i >= d->d.size()) throw vmf::ValidationError("detection index out of range");
    const auto& x = d->d[i];
    *out = vmf_detection{x.x, x.y, x.dx, x.dy, x.ndet, x.lambda};
  });
}

vmf_status vmf_detections_jsonl(const vmf_detections* d, char** out) {
  return guard([&] {
    require(d, "detections");
    require(out, "out");
    *out = dup_string(vmf::detections_jsonl(d->d));
  });
}

vmf_status vmf_detections_overlay(const vmf_image* img, const vmf_detections* d, vmf_image** out) {
  return guard([&] {
    require(img, "image");
    require(d, "detections");
    require(out, "out");
    *out = new vmf_image{vmf::overlay(img->img, d->d)};
  });
}

void vmf_detections_free(vmf_detections* d) { delete d; }

vmf_bench_params vmf_bench_params_default(void) {
  vmf_bench_params p;
  p.width = 2048;
  p.height = 2048;
  p.repetitions = 5;
  p.max_threads = 0;
  p.stage2 = 1;
  return p;
}

vmf_status vmf_bench_run(const vmf_bench_params* p, char** csv, vmf_bench_trends* trends, char** warnings) {
  return guard([&] {
    require(p, "params");
    require(csv, "csv");
    vmf::BenchOptions o;
    o.width = p->width;
    o.height = p->height;
    o.repetitions = p->repetitions;
    o.stage2 = p->stage2 != 0;
    const int mt = p->max_threads > 0 ? p->max_threads : vmf::hardware_threads();
    o.threads = {1};
    if (mt > 1) o.threads.push_back(mt);
    const auto r = vmf::bench(o);
    if (trends) {
      const auto t = vmf::bench_trends(r);
      *trends = vmf_bench_trends{t.iir_spread, t.fir_increasing ? 1 : 0, t.speedup_single, t.speedup_max, t.max_threads};
    }
    std::string w;
    for (const auto& s : r.warnings) w += s + "\n";
    *csv = dup_string(vmf::bench_csv(r));
    if (warnings) *warnings = dup_string(w);
  });
}

}  // extern "C"
