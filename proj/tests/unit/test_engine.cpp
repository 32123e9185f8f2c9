#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "vmf/design.hpp"
#include "vmf/engine.hpp"
#include "vmf/error.hpp"

using namespace vmf;

namespace {

Image random_image(int w, int h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Image img(w, h);
  for (double& v : img.px) v = u(rng);
  return img;
}

// Direct convolution with replicate-edge extension, straight from the definition.
std::vector<double> brute_conv(const std::vector<double>& x, const std::vector<double>& h, int half) {
  const int n = static_cast<int>(x.size());
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int m = -half; m <= half; ++m) y[i] += h[m + half] * x[std::clamp(i - m, 0, n - 1)];
  return y;
}

// Forward and backward recursions run on an impulse from zero state.
std::vector<double> naive_impulse(const ThreePartIIR& f, int half) {
  const int n = 2 * half + 1;
  std::vector<double> x(n, 0.0), fwd(n, 0.0), bwd(n, 0.0), out(n, 0.0);
  x[half] = 1.0;
  const int k = f.order();
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int m = 1; m <= k; ++m)
      if (i - m >= 0) acc += f.b_plus[m - 1] * x[i - m] - f.a_plus[m - 1] * fwd[i - m];
    fwd[i] = acc;
  }
  for (int i = n - 1; i >= 0; --i) {
    double acc = 0.0;
    for (int m = 1; m <= k; ++m)
      if (i + m < n) acc += f.sign() * f.b_plus[m - 1] * x[i + m] - f.a_plus[m - 1] * bwd[i + m];
    bwd[i] = acc;
  }
  for (int i = 0; i < n; ++i) out[i] = fwd[i] + bwd[i] + f.b_zero * x[i];
  return out;
}

std::vector<ThreePartIIR> iir_designs() {
  return {repeated_pole_blur(8.0, 1, 2), repeated_pole_blur(3.0, 2, 2), butterworth_blur(8.0, 1),
          butterworth_blur(4.0, 2), blunt_exponential_blur(6.0, 3), butterworth_appendix(10.0)};
}

// A small antisymmetric three-part filter.
ThreePartIIR odd_filter() {
  ThreePartIIR f;
  f.b_plus = {0.3, -0.1};
  f.a_plus = {-0.9, 0.2};
  f.b_zero = 0.0;
  f.parity = Parity::antisymmetric;
  return f;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("vmf_engine_" + name)).string();
}

}  // namespace

TEST(Conv, ImpulseIsIdentity) {
  const auto img = random_image(31, 17, 1);
  EXPECT_EQ(max_abs_diff(conv_rows(img, FirKernel::impulse()), img), 0.0);
  EXPECT_EQ(max_abs_diff(conv_cols(img, FirKernel::impulse()), img), 0.0);
}

TEST(Conv, SecondDifferenceOfSquare) {
  Image img(40, 3);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 40; ++x) img.at(x, y) = double(x) * x;
  const auto out = conv_rows(img, interp_diff(2));
  for (int y = 0; y < 3; ++y)
    for (int x = 1; x < 39; ++x) EXPECT_EQ(out.at(x, y), 2.0);
}

TEST(Conv, MatchesBruteForce) {
  const auto k = gaussian_fir(2.5, 1, 13);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(64);
  for (double& v : x) v = u(rng);
  const auto got = conv_1d(x, k);
  const auto ref = brute_conv(x, k.taps, k.half());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-14);
}

TEST(Conv, ConstantPreservedIncludingBorders) {
  const Image img(50, 60, 7.0);
  const auto k = gaussian_fir(4.0, 0, 20);
  const auto out = conv_cols(conv_rows(img, k), k);
  for (double v : out.px) EXPECT_NEAR(v, 7.0, 1e-12);
}

TEST(Conv, RejectsLongKernel) {
  const Image img(10, 10);
  EXPECT_THROW(conv_rows(img, gaussian_fir(4.0, 0, 20)), ValidationError);
  EXPECT_THROW(conv_cols(img, gaussian_fir(4.0, 0, 20)), ValidationError);
}

TEST(Iir, ConstantPreservedIncludingBorders) {
  for (const auto& f : iir_designs()) {
    const Image img(64, 48, -3.25);
    const auto out = iir_cols(iir_rows(img, f), f);
    EXPECT_LT(max_abs_diff(out, Image(64, 48, -3.25)), 1e-10);
  }
}

TEST(Iir, AntisymmetricKillsConstant) {
  const std::vector<double> x(40, 5.0);
  for (double v : iir_1d(x, odd_filter())) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Iir, ImpulseRowMatchesImpulseResponse) {
  const auto f = repeated_pole_blur(8.0, 1, 2);
  std::vector<double> x(512, 0.0);
  x[256] = 1.0;
  const auto y = iir_1d(x, f);
  const auto h = impulse_response(f, 255);
  for (int m = -255; m <= 255; ++m) EXPECT_NEAR(y[256 + m], h[m + 255], 1e-10) << "m=" << m;
  // and against recursions written out from their definitions
  const auto ref = naive_impulse(f, 200);
  for (int m = -200; m <= 200; ++m) EXPECT_NEAR(y[256 + m], ref[m + 200], 1e-10);
}

TEST(Iir, MatchesTruncatedImpulseConvolution) {
  const auto img = random_image(256, 256, 3);
  for (const auto& f : iir_designs()) {
    const int ext = impulse_extent(f, 1e-14);
    const auto h = impulse_response(f, ext);
    const FirKernel k(h, Parity::symmetric, 0);
    if (2 * ext + 1 > 256) continue;
    const auto a = iir_cols(iir_rows(img, f), f);
    const auto b = conv_cols(conv_rows(img, k), k);
    EXPECT_LT(max_abs_diff(a, b, ext), 1e-8);
  }
}

TEST(Iir, TransposedFormAgreesOnSteps) {
  for (const auto& f : iir_designs()) {
    std::vector<double> x(300);
    for (int i = 0; i < 300; ++i) x[i] = i < 120 ? 2.5 : (i < 220 ? -1.0 : 4.0);
    const auto a = iir_1d(x, f);
    const auto b = iir_1d_transposed(x, f);
    for (int i = 0; i < 300; ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
  }
  std::vector<double> x(50, 1.0);
  for (int i = 25; i < 50; ++i) x[i] = -2.0;
  const auto a = iir_1d(x, odd_filter());
  const auto b = iir_1d_transposed(x, odd_filter());
  for (int i = 0; i < 50; ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
}

TEST(Iir, RefusesUnstableAndShortLines) {
  ThreePartIIR bad;
  bad.b_plus = {0.5};
  bad.a_plus = {-1.2};
  EXPECT_THROW(iir_1d(std::vector<double>(20, 1.0), bad), NumericalError);
  EXPECT_THROW(iir_rows(Image(5, 5), repeated_pole_blur(8.0, 1, 2)), ValidationError);
}

TEST(Separable, Linearity) {
  const auto a = random_image(64, 64, 11), b = random_image(64, 64, 12);
  SeparableFilter f;
  f.x_stages = {repeated_pole_blur(4.0, 1, 2), interp_diff(1)};
  f.y_stages = {repeated_pole_blur(4.0, 1, 2), interp_diff(2)};
  Image mix(64, 64);
  for (std::size_t i = 0; i < mix.size(); ++i) mix.px[i] = 2.0 * a.px[i] - 0.5 * b.px[i];
  const auto fa = apply_separable(a, f), fb = apply_separable(b, f), fm = apply_separable(mix, f);
  for (std::size_t i = 0; i < mix.size(); ++i) EXPECT_NEAR(fm.px[i], 2.0 * fa.px[i] - 0.5 * fb.px[i], 1e-10);
}

TEST(Separable, ShiftEquivariance) {
  const auto img = random_image(240, 40, 21);
  Image shifted(240, 40);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 240; ++x) shifted.at(x, y) = img.at(std::max(0, x - 1), y);
  SeparableFilter fir;
  fir.x_stages = {gaussian_fir(2.0, 0, 10)};
  const auto a = apply_separable(img, fir), b = apply_separable(shifted, fir);
  for (int y = 0; y < 40; ++y)
    for (int x = 12; x < 226; ++x) EXPECT_EQ(b.at(x + 1, y), a.at(x, y));
  SeparableFilter iir;
  iir.x_stages = {repeated_pole_blur(2.0, 1, 2)};
  const auto c = apply_separable(img, iir), d = apply_separable(shifted, iir);
  for (int y = 0; y < 40; ++y)
    // edge influence decays below rounding after ~80 samples
    for (int x = 90; x < 150; ++x) EXPECT_NEAR(d.at(x + 1, y), c.at(x, y), 1e-12);
}

TEST(Separable, StageOrderIsImmaterial) {
  const auto img = random_image(80, 70, 4);
  const Filter1D fx = repeated_pole_blur(5.0, 1, 2);
  const Filter1D fy = gaussian_fir(3.0, 1, 15);
  const auto xy = filter_cols(filter_rows(img, fx), fy);
  const auto yx = filter_rows(filter_cols(img, fy), fx);
  EXPECT_LT(max_abs_diff(xy, yx), 1e-10);
}

TEST(Separable, IdentityLeavesInput) {
  const auto img = random_image(20, 20, 9);
  SeparableFilter f;
  f.x_stages = {FirKernel::impulse()};
  f.y_stages = {FirKernel::impulse()};
  EXPECT_EQ(max_abs_diff(apply_separable(img, f), img), 0.0);
}

TEST(Separable, ImpulseGivesOuterProduct) {
  const auto k = gaussian_fir(4.0, 0, 20);
  Image img(61, 61);
  img.at(30, 30) = 1.0;
  SeparableFilter f;
  f.x_stages = {k};
  f.y_stages = {k};
  const auto out = apply_separable(img, f);
  for (int y = 0; y < 61; ++y)
    for (int x = 0; x < 61; ++x) EXPECT_NEAR(out.at(x, y), k.at(x - 30) * k.at(y - 30), 1e-12);
}

TEST(DerivativeFieldTest, QuadraticImage) {
  // a + b x + c y + d x^2 + e x y + f y^2
  const double a = 0.3, b = 0.02, c = -0.01, d = 1e-3, e = -2e-3, f = 5e-4;
  // replicate-edge is not quadratic; keep the checked window far from the borders
  Image img(400, 380);
  for (int y = 0; y < 380; ++y)
    for (int x = 0; x < 400; ++x) img.at(x, y) = a + b * x + c * y + d * x * x + e * x * y + f * y * y;
  for (const Filter1D& blur : {Filter1D(repeated_pole_blur(3.0, 1, 2)), Filter1D(colored_sg_blur(3.0, 1)),
                               Filter1D(butterworth_blur(3.0, 1))}) {
    const auto field = derivative_field(img, blur, 3);
    for (int y = 180; y < 200; ++y)
      for (int x = 190; x < 210; ++x) {
        EXPECT_NEAR(field.get(2, 0).at(x, y), 2 * d, 1e-9);
        EXPECT_NEAR(field.get(1, 1).at(x, y), e, 1e-9);
        EXPECT_NEAR(field.get(0, 2).at(x, y), 2 * f, 1e-9);
        EXPECT_NEAR(field.get(1, 0).at(x, y), b + 2 * d * x + e * y, 1e-8);
        EXPECT_NEAR(field.get(0, 1).at(x, y), c + e * x + 2 * f * y, 1e-8);
      }
  }
}

TEST(DerivativeFieldTest, ConstantAndRamp) {
  const Image flat(40, 40, 2.0);
  const auto f0 = derivative_field(flat, repeated_pole_blur(3.0, 1, 2), 3);
  for (double v : f0.get(0, 0).px) EXPECT_NEAR(v, 2.0, 1e-10);
  for (double v : f0.get(1, 0).px) EXPECT_NEAR(v, 0.0, 1e-10);
  for (double v : f0.get(1, 1).px) EXPECT_NEAR(v, 0.0, 1e-10);
  Image ramp(60, 60);
  for (int y = 0; y < 60; ++y)
    for (int x = 0; x < 60; ++x) ramp.at(x, y) = x;
  const auto f1 = derivative_field(ramp, gaussian_fir(2.0, 0, 10), 3);
  for (int y = 0; y < 60; ++y)
    for (int x = 12; x < 48; ++x) EXPECT_NEAR(f1.get(1, 0).at(x, y), 1.0, 1e-12);
  EXPECT_FALSE(f1.has(2, 1));
  EXPECT_THROW(f1.get(2, 1), ValidationError);
  EXPECT_TRUE(derivative_field(ramp, gaussian_fir(2.0, 0, 10), 3, 1, true).has(2, 2));
  EXPECT_THROW(derivative_field(ramp, gaussian_fir(2.0, 0, 10), 4), ValidationError);
}

TEST(Threads, OutputsAreBitIdentical) {
  const auto img = random_image(123, 77, 8);
  for (const Filter1D& f : {Filter1D(repeated_pole_blur(6.0, 1, 2)), Filter1D(gaussian_fir(3.0, 0, 15))}) {
    const auto one = derivative_field(img, f, 3, 1);
    for (int t : {2, 3, 8}) {
      const auto many = derivative_field(img, f, 3, t);
      for (std::size_t i = 0; i < one.images.size(); ++i) EXPECT_EQ(one.images[i].px, many.images[i].px);
    }
  }
}

TEST(Threads, ParallelForCoversRange) {
  std::vector<int> hits(101, 0);
  parallel_for(101, 7, [&](int b, int e) {
    for (int i = b; i < e; ++i) ++hits[i];
  });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_GE(hardware_threads(), 1);
}

TEST(SupportRadius, FirAndIir) {
  EXPECT_EQ(support_radius(gaussian_fir(2.0, 0, 10)), 10);
  const auto f = repeated_pole_blur(8.0, 1, 2);
  const int r = support_radius(f);
  const auto h = impulse_response(f, r + 5);
  double peak = 0.0;
  for (double v : h) peak = std::max(peak, std::abs(v));
  for (int m = r + 1; m <= r + 5; ++m) EXPECT_LT(std::abs(h[m + r + 5]), 1e-14 * peak);
}

TEST(Io, PgmRoundTrip) {
  Image img(13, 7);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 13; ++x) img.at(x, y) = ((x * 7 + y * 3) % 256) / 255.0;
  for (bool binary : {true, false})
    for (int maxval : {255, 65535}) {
      const auto path = temp_path("rt.pgm");
      write_pgm(img, path, maxval, binary);
      const auto back = read_image(path);
      ASSERT_EQ(back.width, 13);
      ASSERT_EQ(back.height, 7);
      EXPECT_LT(max_abs_diff(back, img), 0.5 / maxval + 1e-12);
      std::filesystem::remove(path);
    }
}

TEST(Io, RawRoundTripKeepsSign) {
  const auto img = random_image(9, 11, 2);
  const auto path = temp_path("rt.raw");
  write_raw_f32(img, path);
  const auto back = read_image(path);
  EXPECT_LT(max_abs_diff(back, img), 1e-7);
  std::filesystem::remove(path);
}

TEST(Io, BadFiles) {
  EXPECT_THROW(read_image(temp_path("does_not_exist.pgm")), IoError);
  const auto path = temp_path("bad.pgm");
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n4 4\n255\nab";
  }
  EXPECT_THROW(read_pgm(path), ValidationError);
  {
    std::ofstream out(path, std::ios::binary);
    out << "P6\n1 1\n255\nabc";
  }
  EXPECT_THROW(read_pgm(path), ValidationError);
  {
    std::ofstream out(path, std::ios::binary);
    out << "P2\n2 1\n10\n3 11\n";
  }
  EXPECT_THROW(read_pgm(path), ValidationError);
  std::filesystem::remove(path);
  EXPECT_THROW(Image(0, 3), ValidationError);
}
