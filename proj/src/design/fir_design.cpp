#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "vmf/design.hpp"
#include "vmf/error.hpp"

namespace vmf {

namespace {

using MatX = Eigen::Matrix<ext, Eigen::Dynamic, Eigen::Dynamic>;
using VecX = Eigen::Matrix<ext, Eigen::Dynamic, 1>;

ext factorial(int n) {
  ext f = 1;
  for (int i = 2; i <= n; ++i) f *= ext(i);
  return f;
}

ext int_pow(ext x, int n) {
  ext r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// i^l
cext ipow(int l) {
  static const cext table[4] = {cext(1, 0), cext(0, 1), cext(-1, 0), cext(0, -1)};
  return table[((l % 4) + 4) % 4];
}

// Solves the square real system obtained from rho = F c after removing the
// common i^l factor of each row.
std::vector<ext> solve_square(const MatX& a, const VecX& b, double* condition) {
  Eigen::PartialPivLU<MatX> lu(a);
  const ext rcond = lu.rcond();
  if (condition) *condition = rcond > 0 ? 1.0 / static_cast<double>(rcond) : INFINITY;
  if (!(rcond > ext(1e-16))) {
    std::ostringstream msg;
    msg << "constraint matrix is ill-conditioned (condition estimate "
        << (rcond > 0 ? 1.0 / static_cast<double>(rcond) : INFINITY) << ")";
    throw NumericalError(msg.str());
  }
  const VecX x = lu.solve(b);
  return std::vector<ext>(x.data(), x.data() + x.size());
}

}  // namespace

FirKernel interp_diff(int d) {
  if (d < 0 || d > 8) throw ValidationError("interp_diff: derivative order must lie in [0, 8]");
  const int delta = delta_of(d);
  const int k = (d + delta) / 2;
  // (z - 1)^d (z + 1)^delta, ascending powers of z
  std::vector<double> poly{1.0};
  auto times = [&poly](double root_sign) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] += root_sign * poly[j];
    }
    poly.swap(next);
  };
  for (int i = 0; i < d; ++i) times(-1.0);
  for (int i = 0; i < delta; ++i) times(1.0);
  // Coefficient of z^j (after dividing by z^k) is h(-j).
  std::vector<double> taps(2 * static_cast<std::size_t>(k) + 1, 0.0);
  for (int j = -k; j <= k; ++j) taps[static_cast<std::size_t>(-j + k)] = poly[static_cast<std::size_t>(j + k)] / (delta + 1);
  return FirKernel(std::move(taps), delta ? Parity::antisymmetric : Parity::symmetric, d);
}

FirKernel gaussian_fir(double sigma, int d, int K) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
  if (d < 0 || d > 8) throw ValidationError("gaussian_fir: derivative order must lie in [0, 8]");
  if (K < 1) throw ValidationError("gaussian_fir: half-length K must be at least 1");
  const double tail = std::erfc((K + 0.5) / (sigma * std::sqrt(2.0)));
  if (K < static_cast<int>(std::ceil(3.0 * sigma)) && tail > 1e-3) {
    std::ostringstream msg;
    msg << "gaussian_fir: K=" << K << " truncates " << tail << " of the Gaussian mass (limit 1e-3)";
    throw ValidationError(msg.str());
  }
  const ext s = sigma;
  const ext norm = 1.0L / (s * std::sqrt(2.0L * 3.14159265358979323846264338327950288L));
  std::vector<ext> g0(2 * static_cast<std::size_t>(K) + 1);
  ext total = 0;
  for (int m = -K; m <= K; ++m) {
    g0[static_cast<std::size_t>(m + K)] = norm * std::exp(-ext(m) * ext(m) / (2 * s * s));
    total += g0[static_cast<std::size_t>(m + K)];
  }
  const ext cg = 1.0L / total;
  std::vector<double> taps(g0.size());
  for (int m = -K; m <= K; ++m) {
    // d-th derivative of g0 is (-1)^d He_d(x/sigma) / sigma^d g0(x)
    const ext t = ext(m) / s;
    ext he_prev = 1, he = t;
    ext he_d = d == 0 ? he_prev : he;
    for (int n = 1; n < d; ++n) {
      const ext next = t * he - ext(n) * he_prev;
      he_prev = he;
      he = next;
      he_d = he;
    }
    const ext sign = (d % 2) ? -1.0L : 1.0L;
    taps[static_cast<std::size_t>(m + K)] =
        static_cast<double>(cg * sign * he_d / std::pow(s, d) * g0[static_cast<std::size_t>(m + K)]);
  }
  if (d % 2) taps[static_cast<std::size_t>(K)] = 0.0;
  return FirKernel(std::move(taps), (d % 2) ? Parity::antisymmetric : Parity::symmetric, d);
}

std::vector<FirKernel> fir_vm_bank(int D, int L_pi_bar, CascadeMode mode, std::vector<ConstraintSystem>* systems) {
  if (D % 2 == 0 || D < 3 || D > 9) throw ValidationError("fir_vm_bank: D must be odd and lie in [3, 9]");
  if (L_pi_bar < 0) throw ValidationError("fir_vm_bank: L_pi_bar must be non-negative");
  const int L_D = (D - 1) / 2;
  const int l_pi = mode == CascadeMode::behind_blur ? 0 : L_pi_bar;
  std::vector<FirKernel> bank;
  if (systems) systems->clear();
  for (int d = 0; d < D; ++d) {
    const int delta = delta_of(d);
    const int l_dc = L_D - delta + 1;
    const int n = l_dc + l_pi;
    // Basis element k as a tap list over m = -(n+delta)..(n+delta).
    const int half = n - 1 + delta;
    auto basis = [&](int k, int m) -> ext {
      if (delta == 0) {
        if (k == 0) return m == 0 ? ext(1) : ext(0);
        return (m == k || m == -k) ? ext(1) : ext(0);
      }
      if (m == -(k + 1)) return ext(1);
      if (m == k + 1) return ext(-1);
      return ext(0);
    };
    MatX a(n, n);
    VecX rhs = VecX::Zero(n);
    ConstraintSystem sys;
    for (int r = 0; r < n; ++r) {
      const bool at_pi = r >= l_dc;
      const int l = delta + 2 * (at_pi ? r - l_dc : r);
      std::vector<std::complex<double>> row;
      for (int k = 0; k < n; ++k) {
        cext acc = 0;
        for (int m = -half; m <= half; ++m) {
          const ext f = basis(k, m);
          if (f == 0) continue;
          const ext sgn = (at_pi && (m % 2 != 0)) ? -1.0L : 1.0L;
          acc += f * sgn * ipow(-l) * int_pow(ext(m), l);
        }
        a(r, k) = (acc / ipow(l)).real();
        row.emplace_back(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
      }
      sys.F.push_back(row);
      cext target = 0;
      if (!at_pi && r == (d - delta) / 2) target = ipow(d) * factorial(d);
      rhs(r) = (target / ipow(l)).real();
      sys.rho.emplace_back(static_cast<double>(target.real()), static_cast<double>(target.imag()));
    }
    const auto c = solve_square(a, rhs, &sys.condition);
    std::vector<double> taps(2 * static_cast<std::size_t>(half) + 1, 0.0);
    for (int k = 0; k < n; ++k)
      for (int m = -half; m <= half; ++m)
        taps[static_cast<std::size_t>(m + half)] += static_cast<double>(c[static_cast<std::size_t>(k)] * basis(k, m));
    for (const ext v : c) sys.c.push_back(static_cast<double>(v));
    if (systems) systems->push_back(std::move(sys));
    bank.emplace_back(std::move(taps), delta ? Parity::antisymmetric : Parity::symmetric, d);
  }
  return bank;
}

double colored_sg_cutoff(double sigma) { return 3.0 / sigma; }

int colored_sg_half_length(double sigma, int L_D) {
  if (L_D == 1) return static_cast<int>(std::ceil(5.0 * sigma));
  if (L_D == 2) return static_cast<int>(std::ceil(7.0 * sigma));
  throw ValidationError("colored_sg_blur: L_D must be 1 or 2");
}

FirKernel colored_sg_blur(double sigma, int L_D) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
  if (sigma < 1.0) throw ValidationError("colored_sg_blur: sigma must be at least 1");
  const int K = colored_sg_half_length(sigma, L_D);
  const ext wc = ext(3) / ext(sigma);
  const ext pi = 3.14159265358979323846264338327950288L;
  auto sbar = [&](int diff) -> ext {
    if (diff == 0) return (pi - wc) / pi;
    return -std::sin(wc * ext(diff)) / (pi * ext(diff));
  };
  const int n = K + 1;
  const int nc = L_D + 1;
  MatX sys = MatX::Zero(n + nc, n + nc);
  // S = J Sbar J^T with J mapping c_k onto taps at m = +/-k.
  for (int k1 = 0; k1 <= K; ++k1)
    for (int k2 = 0; k2 <= K; ++k2) {
      ext acc = 0;
      for (int s1 : {-1, 1}) {
        if (k1 == 0 && s1 < 0) continue;
        for (int s2 : {-1, 1}) {
          if (k2 == 0 && s2 < 0) continue;
          acc += sbar(s1 * k1 - s2 * k2);
        }
      }
      sys(k1, k2) = acc;
    }
  // rho_l = 0 for even l > 0 is the same as sum m^l h(m) = 0.
  for (int r = 0; r < nc; ++r) {
    const int l = 2 * r;
    for (int k = 0; k <= K; ++k) {
      ext v = (k == 0) ? (l == 0 ? ext(1) : ext(0)) : ext(2) * int_pow(ext(k), l);
      sys(n + r, k) = v;
      sys(k, n + r) = v;
    }
  }
  VecX rhs = VecX::Zero(n + nc);
  rhs(n) = 1;
  Eigen::FullPivLU<MatX> lu(sys);
  if (!lu.isInvertible()) throw NumericalError("colored_sg_blur: saddle-point matrix is singular");
  const VecX x = lu.solve(rhs);
  std::vector<double> taps(2 * static_cast<std::size_t>(K) + 1);
  for (int m = -K; m <= K; ++m) taps[static_cast<std::size_t>(m + K)] = static_cast<double>(x(std::abs(m)));
  return FirKernel(std::move(taps), Parity::symmetric, 0);
}

}  // namespace vmf
