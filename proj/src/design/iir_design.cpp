#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "vmf/design.hpp"
#include "vmf/error.hpp"

namespace vmf {

namespace {

using MatX = Eigen::Matrix<ext, Eigen::Dynamic, Eigen::Dynamic>;
using VecX = Eigen::Matrix<ext, Eigen::Dynamic, 1>;

const ext kPi = 3.14159265358979323846264338327950288L;

// Ascending coefficients in u = z^-1 of (1 - p u)^n.
std::vector<ext> one_minus_pu(ext p, int n) {
  std::vector<ext> out{1};
  for (int i = 0; i < n; ++i) {
    std::vector<ext> next(out.size() + 1, 0);
    for (std::size_t j = 0; j < out.size(); ++j) {
      next[j] += out[j];
      next[j + 1] -= p * out[j];
    }
    out.swap(next);
  }
  return out;
}

std::vector<ext> mul(const std::vector<ext>& a, const std::vector<ext>& b) {
  std::vector<ext> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Numerators N_k(u) of the one-sided transform of m^k p^m, whose
// denominator is (1 - p u)^(k+1); built from Z{m f} = u d/du F.
std::vector<std::vector<ext>> repeated_pole_numerators(ext p, int count) {
  std::vector<std::vector<ext>> out;
  out.push_back({1});
  for (int k = 0; k + 1 < count; ++k) {
    const auto& nk = out.back();
    // u [N_k'(u)(1 - p u) + (k+1) p N_k(u)]
    std::vector<ext> inner(nk.size() + 1, 0);
    for (std::size_t j = 1; j < nk.size(); ++j) {
      const ext dj = ext(j) * nk[j];
      inner[j - 1] += dj;
      inner[j] -= p * dj;
    }
    for (std::size_t j = 0; j < nk.size(); ++j) inner[j] += ext(k + 1) * p * nk[j];
    std::vector<ext> next(inner.size() + 1, 0);
    for (std::size_t j = 0; j < inner.size(); ++j) next[j + 1] = inner[j];
    while (next.size() > 1 && next.back() == 0) next.pop_back();
    out.push_back(next);
  }
  return out;
}

ThreePartIIRX decompose_known_poles(const RationalTFX& tf, const std::vector<cext>& poles) {
  const auto split = split_from_poles(tf.den, poles);
  return three_part_decompose(tf, split, Parity::symmetric);
}

void require_scale(double v, const char* name) {
  if (!(v > 0.0)) throw ValidationError(std::string(name) + " must be positive");
  if (v < 1.0) throw ValidationError(std::string(name) + " must be at least 1");
}

// Forward numerator, denominator and center term straight from the solved
// basis weights; no root finding involved.
ThreePartIIRX repeated_pole_parts(ext p, int L_D, int L_pi_bar, ConstraintSystem* system) {
  if (L_D < 0 || L_pi_bar < 0) throw ValidationError("repeated_pole_blur: L_D and L_pi_bar must be non-negative");
  const int n = L_D + L_pi_bar;
  if (n < 1 || n > 6) throw ValidationError("repeated_pole_blur: L_D + L_pi_bar must lie in [1, 6]");
  if (!(p > 0 && p < 1)) throw ValidationError("repeated_pole_blur: pole must lie in (0, 1)");

  const auto nums = repeated_pole_numerators(p, n);
  // Rows: dc l = 0, 2, .., 2 L_D then pi l = 0, 2, .., 2 (L_pi_bar - 1).
  // Columns: k = 0..n-1 recursive elements, then the unit impulse.
  const int rows = L_D + 1 + L_pi_bar;
  MatX f(rows, n + 1);
  VecX rho = VecX::Zero(rows);
  rho(0) = 1;
  for (int k = 0; k < n; ++k) {
    RationalTFX part{LaurentPolyX::from_causal(nums[static_cast<std::size_t>(k)]),
                     LaurentPolyX::from_causal(one_minus_pu(p, k + 1))};
    const auto dc = dc_derivatives(part, EvalPoint::dc, 2 * L_D);
    const auto pi = L_pi_bar > 0 ? dc_derivatives(part, EvalPoint::pi, 2 * (L_pi_bar - 1)) : std::vector<cext>{};
    const ext f0 = k == 0 ? 1 : 0;  // m^k p^m at m = 0
    // F_k = F+_k(z) + F+_k(1/z) - f_k(0): even derivatives double, the shared center is removed once.
    for (int r = 0; r <= L_D; ++r)
      f(r, k) = 2 * dc[static_cast<std::size_t>(2 * r)].real() - (r == 0 ? f0 : 0);
    for (int r = 0; r < L_pi_bar; ++r)
      f(L_D + 1 + r, k) = 2 * pi[static_cast<std::size_t>(2 * r)].real() - (r == 0 ? f0 : 0);
  }
  for (int r = 0; r < rows; ++r) f(r, n) = (r == 0 || r == L_D + 1) ? 1 : 0;

  Eigen::PartialPivLU<MatX> lu(f);
  const ext rcond = lu.rcond();
  if (!(rcond > ext(1e-17))) {
    std::ostringstream msg;
    msg << "repeated_pole_blur: constraint matrix is ill-conditioned (condition estimate "
        << 1.0 / static_cast<double>(rcond) << ")";
    throw NumericalError(msg.str());
  }
  const VecX c = lu.solve(rho);
  if (system) {
    system->F.assign(static_cast<std::size_t>(rows), {});
    for (int r = 0; r < rows; ++r)
      for (int k = 0; k <= n; ++k) system->F[static_cast<std::size_t>(r)].emplace_back(static_cast<double>(f(r, k)), 0.0);
    system->rho.clear();
    for (int r = 0; r < rows; ++r) system->rho.emplace_back(static_cast<double>(rho(r)), 0.0);
    system->c.clear();
    for (int k = 0; k <= n; ++k) system->c.push_back(static_cast<double>(c(k)));
    system->condition = 1.0 / static_cast<double>(rcond);
  }

  // Forward numerator over A+ = (1 - p u)^n: sum_k c_k (F+_k - f_k(0)).
  const auto a_plus = one_minus_pu(p, n);
  std::vector<ext> b_plus(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k < n; ++k) {
    const auto term = mul(nums[static_cast<std::size_t>(k)], one_minus_pu(p, n - k - 1));
    for (std::size_t j = 0; j < term.size() && j < b_plus.size(); ++j) b_plus[j] += c(k) * term[j];
    if (k == 0)
      for (std::size_t j = 0; j < a_plus.size(); ++j) b_plus[j] -= c(k) * a_plus[j];
  }
  ThreePartIIRX out;
  out.b_plus.assign(b_plus.begin() + 1, b_plus.end());
  out.a_plus.assign(a_plus.begin() + 1, a_plus.end());
  out.b_zero = c(0) + c(n);
  out.parity = Parity::symmetric;
  return out;
}

}  // namespace

RationalTFX repeated_pole_tf(ext p, int L_D, int L_pi_bar, ConstraintSystem* system) {
  return repeated_pole_parts(p, L_D, L_pi_bar, system).to_rational();
}

ThreePartIIRX repeated_pole_blur_x(double sigma, int L_D, int L_pi_bar, ConstraintSystem* system) {
  require_scale(sigma, "sigma");
  return repeated_pole_parts(std::exp(-1.0L / ext(sigma)), L_D, L_pi_bar, system);
}

ThreePartIIR repeated_pole_blur(double sigma, int L_D, int L_pi_bar) {
  return repeated_pole_blur_x(sigma, L_D, L_pi_bar).cast<double>();
}

double butterworth_cutoff(double sigma) { return std::sqrt(2.0 * std::log(2.0)) / sigma; }

RationalTFX butterworth_tf(ext wc, int K) {
  if (K < 1 || K > 8) throw ValidationError("butterworth: order K must lie in [1, 8]");
  if (!(wc > 0 && wc < kPi)) throw ValidationError("butterworth: cutoff must lie in (0, pi)");
  const LaurentPolyX plus2(std::vector<ext>{1, 2, 1});     // z^-1 + 2 + z
  const LaurentPolyX minus4(std::vector<ext>{-4, 8, -4});  // -4 (z^-1 - 2 + z)
  const ext w2k = std::pow(wc, 2 * K);
  RationalTFX tf;
  tf.num = plus2.pow(K) * w2k;
  tf.den = tf.num + minus4.pow(K);
  return tf;
}

ThreePartIIRX butterworth_x(ext wc, int K) {
  const auto tf = butterworth_tf(wc, K);
  // Prototype poles s = i wc e^{i pi (2k+1) / 2K}, mapped by z = (2 + s) / (2 - s).
  std::vector<cext> inside;
  for (int k = 0; k < 2 * K; ++k) {
    const cext s = cext(0, wc) * std::polar(ext(1), kPi * ext(2 * k + 1) / ext(2 * K));
    const cext z = (ext(2) + s) / (ext(2) - s);
    if (std::abs(z) < 1) inside.push_back(z);
  }
  if (static_cast<int>(inside.size()) != K) throw NumericalError("butterworth: pole mapping lost symmetry");
  return decompose_known_poles(tf, inside);
}

ThreePartIIR butterworth_blur(double sigma, int L_D) {
  require_scale(sigma, "sigma");
  if (L_D < 0 || L_D > 7) throw ValidationError("butterworth_blur: L_D must lie in [0, 7]");
  return butterworth_x(ext(butterworth_cutoff(sigma)), L_D + 1).cast<double>();
}

ThreePartIIR butterworth_appendix(double lambda) {
  require_scale(lambda, "lambda");
  return butterworth_x(1.0L / ext(lambda), 3).cast<double>();
}

RationalTFX blunt_exponential_tf(ext p, int K) {
  if (K < 1 || K > 4) throw ValidationError("blunt_exponential_blur: K must lie in [1, 4]");
  if (!(p > 0 && p < 1)) throw ValidationError("blunt_exponential_blur: pole must lie in (0, 1)");
  const LaurentPolyX plus2(std::vector<ext>{1, 2, 1});
  const LaurentPolyX pulse(std::vector<ext>{-p, 1 + p * p, -p});
  const ext c0 = std::pow(1 - p, 2 * K) / std::pow(ext(4), K);
  return {plus2.pow(K) * c0, pulse.pow(K)};
}

ThreePartIIRX blunt_exponential_x(ext p, int K) {
  const auto tf = blunt_exponential_tf(p, K);
  return decompose_known_poles(tf, std::vector<cext>(static_cast<std::size_t>(K), cext(p)));
}

ThreePartIIR blunt_exponential_blur(double lambda, int K) {
  require_scale(lambda, "lambda");
  return blunt_exponential_x(std::exp(-1.0L / ext(lambda)), K).cast<double>();
}

}  // namespace vmf
