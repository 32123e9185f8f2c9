#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "vmf/design.hpp"
#include "vmf/engine.hpp"
#include "vmf/error.hpp"

namespace vmf {

Image::Image(int w, int h, double fill) : width(w), height(h) {
  if (w < 1 || h < 1) throw ValidationError("image dimensions must be at least 1x1");
  px.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

double max_abs_diff(const Image& a, const Image& b, int border) {
  if (a.width != b.width || a.height != b.height) throw ValidationError("max_abs_diff: image sizes differ");
  double worst = 0.0;
  for (int y = border; y < a.height - border; ++y)
    for (int x = border; x < a.width - border; ++x) worst = std::max(worst, std::abs(a.at(x, y) - b.at(x, y)));
  return worst;
}

int hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_for(int n, int threads, const std::function<void(int, int)>& body) {
  if (n <= 0) return;
  const int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
    const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

namespace {

void conv_line(const double* in, double* out, int n, const FirKernel& k, std::vector<double>& pad) {
  const int half = k.half();
  pad.resize(static_cast<std::size_t>(n + 2 * half));
  for (int i = 0; i < n + 2 * half; ++i) pad[static_cast<std::size_t>(i)] = in[std::clamp(i - half, 0, n - 1)];
  const double* t = k.taps.data();
  const int len = 2 * half + 1;
  // y(n) = sum_m h(m) x(n - m), i.e. pad index n + 2K - j for tap index j.
  for (int i = 0; i < n; ++i) {
    const double* p = pad.data() + i + 2 * half;
    double acc = 0.0;
    for (int j = 0; j < len; ++j) acc += t[j] * p[-j];
    out[i] = acc;
  }
}

void check_kernel_fits(const FirKernel& k, int n) {
  if (static_cast<int>(k.taps.size()) > n) {
    std::ostringstream msg;
    msg << "kernel of length " << k.taps.size() << " is longer than the line length " << n;
    throw ValidationError(msg.str());
  }
}

void check_iir(const ThreePartIIR& f, int n) {
  if (f.b_plus.size() != f.a_plus.size()) throw ValidationError("three-part filter has mismatched b+/a+ lengths");
  if (2 * f.order() + 1 > n) {
    std::ostringstream msg;
    msg << "line length " << n << " is shorter than 2K+1 = " << 2 * f.order() + 1;
    throw ValidationError(msg.str());
  }
  if (!is_stable(f)) throw NumericalError("refusing to run an unstable recursion (forward pole on or outside the unit circle)");
}

double steady_gain(const ThreePartIIR& f) {
  double s = 1.0;
  for (double a : f.a_plus) s += a;
  return s;
}

// One forward and one backward direct-form II pass plus the central term.
void iir_line(const double* in, double* out, int n, const ThreePartIIR& f, std::vector<double>& w) {
  const int k = f.order();
  const double* a = f.a_plus.data();
  const double* b = f.b_plus.data();
  const double sgn = f.sign();
  const double g = steady_gain(f);
  w.resize(static_cast<std::size_t>(n + k));
  for (int i = 0; i < n; ++i) out[i] = f.b_zero * in[i];
  if (k == 0) return;
  // forward: w[k + i] is the state at sample i
  std::fill(w.begin(), w.begin() + k, in[0] / g);
  for (int i = 0; i < n; ++i) {
    const double* past = w.data() + k + i;
    double acc = in[i];
    double y = 0.0;
    for (int m = 1; m <= k; ++m) {
      acc -= a[m - 1] * past[-m];
      y += b[m - 1] * past[-m];
    }
    w[static_cast<std::size_t>(k + i)] = acc;
    out[i] += y;
  }
  // backward: w[k + j] is the state at sample n - 1 - j
  std::fill(w.begin(), w.begin() + k, in[n - 1] / g);
  for (int j = 0; j < n; ++j) {
    const int i = n - 1 - j;
    const double* past = w.data() + k + j;
    double acc = in[i];
    double y = 0.0;
    for (int m = 1; m <= k; ++m) {
      acc -= a[m - 1] * past[-m];
      y += b[m - 1] * past[-m];
    }
    w[static_cast<std::size_t>(k + j)] = acc;
    out[i] += sgn * y;
  }
}

// Transposed direct form: s_m(n) = s_{m+1}(n-1) + b_m x(n) - a_m y(n), with
// each state started at its fixed point for a constant input equal to the edge.
void iir_line_transposed(const double* in, double* out, int n, const ThreePartIIR& f) {
  const int k = f.order();
  const double sgn = f.sign();
  for (int i = 0; i < n; ++i) out[i] = f.b_zero * in[i];
  if (k == 0) return;
  const double g = steady_gain(f);
  double bsum = 0.0;
  for (double b : f.b_plus) bsum += b;
  const double dc = bsum / g;
  std::vector<double> s(static_cast<std::size_t>(k + 1));
  for (int pass = 0; pass < 2; ++pass) {
    const double edge = pass == 0 ? in[0] : in[n - 1];
    s[static_cast<std::size_t>(k)] = 0.0;
    for (int m = k; m >= 1; --m)
      s[static_cast<std::size_t>(m - 1)] = s[static_cast<std::size_t>(m)] +
          edge * (f.b_plus[static_cast<std::size_t>(m - 1)] - f.a_plus[static_cast<std::size_t>(m - 1)] * dc);
    for (int j = 0; j < n; ++j) {
      const int i = pass == 0 ? j : n - 1 - j;
      const double y = s[0];
      for (int m = 1; m <= k; ++m)
        s[static_cast<std::size_t>(m - 1)] = s[static_cast<std::size_t>(m)] +
            f.b_plus[static_cast<std::size_t>(m - 1)] * in[i] - f.a_plus[static_cast<std::size_t>(m - 1)] * y;
      out[i] += (pass == 0 ? 1.0 : sgn) * y;
    }
  }
}

}  // namespace

std::vector<double> iir_1d_transposed(const std::vector<double>& x, const ThreePartIIR& f) {
  if (x.empty()) throw ValidationError("empty signal");
  check_iir(f, static_cast<int>(x.size()));
  std::vector<double> out(x.size());
  iir_line_transposed(x.data(), out.data(), static_cast<int>(x.size()), f);
  return out;
}

std::vector<double> conv_1d(const std::vector<double>& x, const FirKernel& k) {
  if (x.empty()) throw ValidationError("empty signal");
  check_kernel_fits(k, static_cast<int>(x.size()));
  std::vector<double> out(x.size()), pad;
  conv_line(x.data(), out.data(), static_cast<int>(x.size()), k, pad);
  return out;
}

std::vector<double> iir_1d(const std::vector<double>& x, const ThreePartIIR& f) {
  if (x.empty()) throw ValidationError("empty signal");
  check_iir(f, static_cast<int>(x.size()));
  std::vector<double> out(x.size()), w;
  iir_line(x.data(), out.data(), static_cast<int>(x.size()), f, w);
  return out;
}

Image conv_rows(const Image& img, const FirKernel& k, int threads) {
  check_kernel_fits(k, img.width);
  Image out(img.width, img.height);
  parallel_for(img.height, threads, [&](int y0, int y1) {
    std::vector<double> pad;
    for (int y = y0; y < y1; ++y) conv_line(img.row(y), out.row(y), img.width, k, pad);
  });
  return out;
}

Image conv_cols(const Image& img, const FirKernel& k, int threads) {
  check_kernel_fits(k, img.height);
  Image out(img.width, img.height);
  const int half = k.half();
  const int w = img.width;
  parallel_for(img.height, threads, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      double* o = out.row(y);
      std::fill(o, o + w, 0.0);
      for (int m = -half; m <= half; ++m) {
        const double h = k.at(m);
        if (h == 0.0) continue;
        const double* src = img.row(std::clamp(y - m, 0, img.height - 1));
        for (int x = 0; x < w; ++x) o[x] += h * src[x];
      }
    }
  });
  return out;
}

Image iir_rows(const Image& img, const ThreePartIIR& f, int threads) {
  check_iir(f, img.width);
  Image out(img.width, img.height);
  parallel_for(img.height, threads, [&](int y0, int y1) {
    std::vector<double> w;
    for (int y = y0; y < y1; ++y) iir_line(img.row(y), out.row(y), img.width, f, w);
  });
  return out;
}

Image iir_cols(const Image& img, const ThreePartIIR& f, int threads) {
  check_iir(f, img.height);
  const int k = f.order();
  const int h = img.height;
  const int wd = img.width;
  Image out(wd, h);
  for (std::size_t i = 0; i < out.px.size(); ++i) out.px[i] = f.b_zero * img.px[i];
  if (k == 0) return out;
  const double g = steady_gain(f);
  const double sgn = f.sign();
  // State rows: state[(k + i) * wd + x]; columns are split between workers.
  std::vector<double> state(static_cast<std::size_t>(h + k) * static_cast<std::size_t>(wd));
  auto srow = [&](int r) { return state.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(wd); };
  parallel_for(wd, threads, [&](int x0, int x1) {
    for (int pass = 0; pass < 2; ++pass) {
      const bool forward = pass == 0;
      const double* edge = img.row(forward ? 0 : h - 1);
      for (int r = 0; r < k; ++r)
        for (int x = x0; x < x1; ++x) srow(r)[x] = edge[x] / g;
      for (int j = 0; j < h; ++j) {
        const int y = forward ? j : h - 1 - j;
        const double* in = img.row(y);
        double* o = out.row(y);
        double* cur = srow(k + j);
        for (int x = x0; x < x1; ++x) cur[x] = in[x];
        for (int m = 1; m <= k; ++m) {
          const double am = f.a_plus[static_cast<std::size_t>(m - 1)];
          const double bm = (forward ? 1.0 : sgn) * f.b_plus[static_cast<std::size_t>(m - 1)];
          const double* prev = srow(k + j - m);
          for (int x = x0; x < x1; ++x) {
            cur[x] -= am * prev[x];
            o[x] += bm * prev[x];
          }
        }
      }
    }
  });
  return out;
}

}  // namespace vmf
