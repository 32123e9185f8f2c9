#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "vmf/engine.hpp"
#include "vmf/filters.hpp"

namespace vmf {

// raw[d][l]        = (1/d!) sum_m m^l h_d(-m)
// normalized[d][l] = rho_{d,l} / (i^d d!) = i^(l-d) raw[d][l]   (real for l, d of equal parity)
struct MomentReport {
  int D = 0;
  int extent = 0;  // largest |m| summed over
  std::vector<std::vector<double>> raw;
  std::vector<std::vector<double>> normalized;
  double max_deviation = 0.0;  // max |normalized - delta| over the table
};

// One row per bank entry; entry d is treated as the d-th derivative filter.
MomentReport moment_table(const std::vector<Filter1D>& bank, int D);
MomentReport moment_table(const std::vector<FirKernel>& bank, int D);

// Taps actually used for moment sums; IIR responses are truncated where
// |h| < 1e-14 max|h|.
std::vector<double> effective_taps(const Filter1D& f, int* half = nullptr);

struct FreqSample {
  double omega_x = 0.0;
  double omega_y = 0.0;
  std::complex<double> h;
};

// Uniform grid over [-pi, pi] (1-D) or its square (2-D separable product).
std::vector<FreqSample> freq_grid(const RationalTF& tf_x, const RationalTF& tf_y, int n_points, int dims);
std::vector<FreqSample> freq_grid(const RationalTF& tf, int n_points);
std::string freq_grid_csv(const std::vector<FreqSample>& grid, int dims);

// Two-sided impulse response table m, h(m).
std::string impulse_csv(const Filter1D& f, int half);

using FreqFn = std::function<std::complex<double>(double)>;

// (max - min) / mean of |Hx(wx) Hy(wy)| over 256 points of each circle of radius r.
std::vector<double> isotropy_score(const FreqFn& hx, const FreqFn& hy, const std::vector<double>& radii);
std::vector<double> isotropy_score(const RationalTF& tx, const RationalTF& ty, const std::vector<double>& radii);

// Steering of Taylor coefficients beta_{dx,dy} = D_{dx,dy} / (dx! dy!).
// `order_coeffs` holds one total order n as [beta_{n,0}, beta_{n-1,1}, .., beta_{0,n}].
// Steered coordinates: x~ = x cos(phi) - y sin(phi), y~ = x sin(phi) + y cos(phi).
std::vector<double> steer_order(const std::vector<double>& order_coeffs, double phi);

// beta[dx][dy] for dx + dy < D; entries outside the triangle are ignored.
std::vector<std::vector<double>> steer(const std::vector<std::vector<double>>& beta, double phi);

// Steers every pixel of a derivative field (D-values in, D-values out).
DerivativeField steer_field(const DerivativeField& field, double phi);

}  // namespace vmf
