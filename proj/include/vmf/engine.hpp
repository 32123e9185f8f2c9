#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vmf/filters.hpp"

namespace vmf {

struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> px;  // row-major

  Image() = default;
  Image(int w, int h, double fill = 0.0);

  double& at(int x, int y) { return px[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
  double at(int x, int y) const { return px[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
  double* row(int y) { return px.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width); }
  const double* row(int y) const { return px.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width); }
  std::size_t size() const { return px.size(); }
};

// Largest |a - b| over pixels at least `border` away from every edge.
double max_abs_diff(const Image& a, const Image& b, int border = 0);

// Splits [0, n) into contiguous chunks, one per worker. The result of each
// index never depends on the split, so outputs are bit-identical across
// thread counts.
void parallel_for(int n, int threads, const std::function<void(int, int)>& body);
int hardware_threads();

// FIR passes with replicate-edge extension.
Image conv_rows(const Image& img, const FirKernel& k, int threads = 1);
Image conv_cols(const Image& img, const FirKernel& k, int threads = 1);

// Forward + backward + central recursion with steady-state initialization.
Image iir_rows(const Image& img, const ThreePartIIR& f, int threads = 1);
Image iir_cols(const Image& img, const ThreePartIIR& f, int threads = 1);

Image filter_rows(const Image& img, const Filter1D& f, int threads = 1);
Image filter_cols(const Image& img, const Filter1D& f, int threads = 1);

// 1-D helpers on a single signal.
std::vector<double> conv_1d(const std::vector<double>& x, const FirKernel& k);
std::vector<double> iir_1d(const std::vector<double>& x, const ThreePartIIR& f);
// Same recursion in transposed direct form, with its own steady-state start.
std::vector<double> iir_1d_transposed(const std::vector<double>& x, const ThreePartIIR& f);

struct SeparableFilter {
  std::vector<Filter1D> x_stages;  // applied along rows, in order
  std::vector<Filter1D> y_stages;  // applied along columns, in order
  int dx = 0;
  int dy = 0;
};

// x stages first, then y stages.
Image apply_separable(const Image& img, const SeparableFilter& f, int threads = 1);

// D x D stack of derivative images; entries with dx + dy >= D are empty
// unless requested.
struct DerivativeField {
  int D = 0;
  std::vector<Image> images;  // index dx * D + dy

  bool has(int dx, int dy) const;
  const Image& get(int dx, int dy) const;
  Image& get(int dx, int dy);
};

// Blurs once, then applies the differentiator bank (interp_diff by default).
DerivativeField derivative_field(const Image& img, const Filter1D& lpf, int D, int threads = 1,
                                 bool all_orders = false, const std::vector<FirKernel>* hpf = nullptr);
// Differentiator bank only, on an already blurred image.
DerivativeField derivatives_of_blurred(const Image& blurred, int D, int threads = 1, bool all_orders = false,
                                       const std::vector<FirKernel>* hpf = nullptr);

// Half-width of the region a stage can influence; IIR stages use the point
// where the impulse response falls below 1e-14 of its peak.
int support_radius(const Filter1D& f);

// Image files. PGM values map to [0, 1] by maxval; raw float32 keeps values as-is.
Image read_pgm(const std::string& path);
void write_pgm(const Image& img, const std::string& path, int maxval = 255, bool binary = true);
Image read_raw_f32(const std::string& path);
void write_raw_f32(const Image& img, const std::string& path);
// Dispatches on the file's magic bytes.
Image read_image(const std::string& path);

}  // namespace vmf
