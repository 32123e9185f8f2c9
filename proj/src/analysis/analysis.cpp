#include "vmf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vmf/error.hpp"

namespace vmf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> effective_taps(const Filter1D& f, int* half) {
  if (const auto* k = std::get_if<FirKernel>(&f)) {
    if (half) *half = k->half();
    return k->taps;
  }
  const auto& iir = std::get<ThreePartIIR>(f);
  const int ext = impulse_extent(iir, 1e-14);
  if (half) *half = ext;
  return impulse_response(iir, ext);
}

MomentReport moment_table(const std::vector<Filter1D>& bank, int D) {
  if (D < 1) throw ValidationError("moment_table: D must be at least 1");
  if (static_cast<int>(bank.size()) < D) throw ValidationError("moment_table: bank has fewer than D filters");
  MomentReport rep;
  rep.D = D;
  rep.raw.assign(static_cast<std::size_t>(D), std::vector<double>(static_cast<std::size_t>(D), 0.0));
  rep.normalized = rep.raw;
  for (int d = 0; d < D; ++d) {
    int half = 0;
    const auto taps = effective_taps(bank[static_cast<std::size_t>(d)], &half);
    rep.extent = std::max(rep.extent, half);
    double peak = 0.0;
    for (double v : taps) peak = std::max(peak, std::abs(v));
    if (!std::isfinite(peak)) throw NumericalError("moment_table: impulse response does not decay");
    for (int l = 0; l < D; ++l) {
      // sum_m m^l h(-m) = sum_m (-m)^l h(m)
      long double acc = 0.0L;
      for (int m = -half; m <= half; ++m) {
        const long double h = taps[static_cast<std::size_t>(m + half)];
        if (h == 0.0L) continue;
        acc += h * std::pow(static_cast<long double>(-m), l);
      }
      const double raw = static_cast<double>(acc) / factorial(d);
      rep.raw[static_cast<std::size_t>(d)][static_cast<std::size_t>(l)] = raw;
      // i^(l-d) is +/-1 for equal parity; mixed-parity entries vanish by
      // symmetry and are reported unscaled.
      const int e = ((l - d) % 4 + 4) % 4;
      const double norm = (e == 2 ? -1.0 : 1.0) * raw;
      rep.normalized[static_cast<std::size_t>(d)][static_cast<std::size_t>(l)] = norm;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(norm - (l == d ? 1.0 : 0.0)));
    }
  }
  return rep;
}

MomentReport moment_table(const std::vector<FirKernel>& bank, int D) {
  std::vector<Filter1D> v(bank.begin(), bank.end());
  return moment_table(v, D);
}

std::vector<FreqSample> freq_grid(const RationalTF& tf_x, const RationalTF& tf_y, int n_points, int dims) {
  if (n_points < 16) throw ValidationError("freq_grid: n_points must be at least 16");
  if (dims != 1 && dims != 2) throw ValidationError("freq_grid: dims must be 1 or 2");
  std::vector<double> w(static_cast<std::size_t>(n_points));
  for (int j = 0; j < n_points; ++j) w[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * j / (n_points - 1);
  std::vector<std::complex<double>> hx, hy;
  for (double o : w) hx.push_back(eval_freq(tf_x, o));
  std::vector<FreqSample> out;
  if (dims == 1) {
    for (int j = 0; j < n_points; ++j) out.push_back({w[static_cast<std::size_t>(j)], 0.0, hx[static_cast<std::size_t>(j)]});
    return out;
  }
  for (double o : w) hy.push_back(eval_freq(tf_y, o));
  for (int jy = 0; jy < n_points; ++jy)
    for (int jx = 0; jx < n_points; ++jx)
      out.push_back({w[static_cast<std::size_t>(jx)], w[static_cast<std::size_t>(jy)],
                     hx[static_cast<std::size_t>(jx)] * hy[static_cast<std::size_t>(jy)]});
  return out;
}

std::vector<FreqSample> freq_grid(const RationalTF& tf, int n_points) { return freq_grid(tf, tf, n_points, 1); }

std::string freq_grid_csv(const std::vector<FreqSample>& grid, int dims) {
  std::ostringstream out;
  out << (dims == 2 ? "omega_x,omega_y,mag,re,im\n" : "omega,mag,re,im\n");
  for (const auto& s : grid) {
    out << fmt17(s.omega_x) << ',';
    if (dims == 2) out << fmt17(s.omega_y) << ',';
    out << fmt17(std::abs(s.h)) << ',' << fmt17(s.h.real()) << ',' << fmt17(s.h.imag()) << '\n';
  }
  return out.str();
}

std::string impulse_csv(const Filter1D& f, int half) {
  if (half < 0) throw ValidationError("impulse_csv: half-length must be non-negative");
  std::vector<double> h;
  if (const auto* k = std::get_if<FirKernel>(&f)) {
    for (int m = -half; m <= half; ++m) h.push_back(k->at(m));
  } else {
    h = impulse_response(std::get<ThreePartIIR>(f), half);
  }
  std::ostringstream out;
  out << "m,h\n";
  for (int m = -half; m <= half; ++m) out << m << ',' << fmt17(h[static_cast<std::size_t>(m + half)]) << '\n';
  return out.str();
}

std::vector<double> isotropy_score(const FreqFn& hx, const FreqFn& hy, const std::vector<double>& radii) {
  constexpr int kAngles = 256;
  std::vector<double> out;
  for (double r : radii) {
    if (!(r > 0.0 && r < kPi)) throw ValidationError("isotropy_score: radius must lie in (0, pi)");
    double lo = INFINITY, hi = -INFINITY, sum = 0.0;
    for (int a = 0; a < kAngles; ++a) {
      const double t = 2.0 * kPi * a / kAngles;
      const double v = std::abs(hx(r * std::cos(t)) * hy(r * std::sin(t)));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    const double mean = sum / kAngles;
    out.push_back(mean > 0.0 ? (hi - lo) / mean : 0.0);
  }
  return out;
}

std::vector<double> isotropy_score(const RationalTF& tx, const RationalTF& ty, const std::vector<double>& radii) {
  return isotropy_score([&](double w) { return eval_freq(tx, w); }, [&](double w) { return eval_freq(ty, w); }, radii);
}

std::vector<double> steer_order(const std::vector<double>& coeffs, double phi) {
  if (coeffs.empty()) return {};
  const int n = static_cast<int>(coeffs.size()) - 1;
  const double c = std::cos(phi), s = std::sin(phi);
  std::vector<double> out(coeffs.size(), 0.0);
  // x~^dx y~^dy with x~ = c x - s y, y~ = s x + c y; collect x^(n-b) y^b.
  for (int dy = 0; dy <= n; ++dy) {
    const int dx = n - dy;
    const double beta = coeffs[static_cast<std::size_t>(dy)];
    if (beta == 0.0) continue;
    for (int i = 0; i <= dx; ++i) {
      const double tx = binomial(dx, i) * std::pow(c, dx - i) * std::pow(-s, i);
      for (int j = 0; j <= dy; ++j) {
        const double ty = binomial(dy, j) * std::pow(s, dy - j) * std::pow(c, j);
        out[static_cast<std::size_t>(i + j)] += beta * tx * ty;
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> steer(const std::vector<std::vector<double>>& beta, double phi) {
  const int D = static_cast<int>(beta.size());
  std::vector<std::vector<double>> out(beta.size());
  for (int dx = 0; dx < D; ++dx) out[static_cast<std::size_t>(dx)].assign(beta[static_cast<std::size_t>(dx)].size(), 0.0);
  auto get = [&](int dx, int dy) {
    const auto& row = beta[static_cast<std::size_t>(dx)];
    return dy < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(dy)] : 0.0;
  };
  for (int n = 0; n < D; ++n) {
    std::vector<double> order;
    for (int dy = 0; dy <= n; ++dy) order.push_back(get(n - dy, dy));
    const auto st = steer_order(order, phi);
    for (int dy = 0; dy <= n; ++dy) {
      auto& row = out[static_cast<std::size_t>(n - dy)];
      if (dy < static_cast<int>(row.size())) row[static_cast<std::size_t>(dy)] = st[static_cast<std::size_t>(dy)];
    }
  }
  return out;
}

DerivativeField steer_field(const DerivativeField& field, double phi) {
  const int D = field.D;
  DerivativeField out;
  out.D = D;
  out.images.resize(field.images.size());
  int w = 0, h = 0;
  for (int n = 0; n < D; ++n)
    for (int dy = 0; dy <= n; ++dy) {
      const Image& src = field.get(n - dy, dy);
      w = src.width;
      h = src.height;
    }
  for (int n = 0; n < D; ++n)
    for (int dy = 0; dy <= n; ++dy) out.images[static_cast<std::size_t>((n - dy) * D + dy)] = Image(w, h);
  const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  for (int n = 0; n < D; ++n) {
    // Precompute the linear map for this order once.
    std::vector<std::vector<double>> map(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
      std::vector<double> unit(static_cast<std::size_t>(n + 1), 0.0);
      unit[static_cast<std::size_t>(k)] = 1.0;
      map[static_cast<std::size_t>(k)] = steer_order(unit, phi);
    }
    for (int k = 0; k <= n; ++k) {
      const Image& src = field.get(n - k, k);
      const double to_beta = 1.0 / (factorial(n - k) * factorial(k));
      for (int j = 0; j <= n; ++j) {
        const double coef = map[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * to_beta * factorial(n - j) * factorial(j);
        if (coef == 0.0) continue;
        Image& dst = out.images[static_cast<std::size_t>((n - j) * D + j)];
        for (std::size_t i = 0; i < count; ++i) dst.px[i] += coef * src.px[i];
      }
    }
  }
  return out;
}

}  // namespace vmf
