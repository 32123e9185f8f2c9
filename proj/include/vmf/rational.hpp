#pragma once

#include <cmath>
#include <complex>
#include <type_traits>
#include <limits>
#include <sstream>
#include <vector>

#include "vmf/error.hpp"
#include "vmf/laurent.hpp"

namespace vmf {

// Non-causal transfer function num(z) / den(z).
template <class T>
struct BasicRationalTF {
  BasicLaurentPoly<T> num = BasicLaurentPoly<T>::constant(T(1));
  BasicLaurentPoly<T> den = BasicLaurentPoly<T>::constant(T(1));

  static BasicRationalTF identity() { return {}; }

  template <class U>
  BasicRationalTF<U> cast() const {
    return {num.template cast<U>(), den.template cast<U>()};
  }

  friend BasicRationalTF operator*(const BasicRationalTF& a, const BasicRationalTF& b) {
    return {a.num * b.num, a.den * b.den};
  }
};

using RationalTF = BasicRationalTF<double>;
using RationalTFX = BasicRationalTF<ext>;

enum class EvalPoint { dc, pi };

// p(e^{iw}) with the +j/-j terms paired, so exactly symmetric coefficients
// give an exactly real value.
template <class T>
std::complex<T> eval_unit_circle(const BasicLaurentPoly<T>& p, T omega) {
  T re = p[0], im = 0;
  for (int j = 1; j <= p.half_order(); ++j) {
    re += (p[j] + p[-j]) * std::cos(T(j) * omega);
    im += (p[j] - p[-j]) * std::sin(T(j) * omega);
  }
  return {re, im};
}

// Frequency response at omega (radians per pixel).
template <class T>
std::complex<T> eval_freq(const BasicRationalTF<T>& tf, T omega) {
  const std::complex<T> d = eval_unit_circle(tf.den, omega);
  if (std::abs(d) <= T(1e-14) * T(tf.den.scale())) {
    std::ostringstream msg;
    msg << "transfer function has a pole on the unit circle at omega=" << static_cast<double>(omega);
    throw NumericalError(msg.str());
  }
  return eval_unit_circle(tf.num, omega) / d;
}

// Taylor coefficients of p(e^{i w}) around w0 in {0, pi}, up to order l_max.
template <class T>
std::vector<std::complex<T>> unit_circle_taylor(const BasicLaurentPoly<T>& p, EvalPoint at, int l_max) {
  std::vector<std::complex<T>> out(static_cast<std::size_t>(l_max) + 1, std::complex<T>(0));
  const int k = p.half_order();
  const std::complex<T> i(0, 1);
  for (int j = -k; j <= k; ++j) {
    const T c = p[j];
    if (c == T(0)) continue;
    const T sign = (at == EvalPoint::pi && (j % 2 != 0)) ? T(-1) : T(1);
    // (i j)^l / l! accumulated incrementally.
    std::complex<T> term = std::complex<T>(c * sign);
    for (int l = 0; l <= l_max; ++l) {
      out[static_cast<std::size_t>(l)] += term;
      term *= i * T(j) / T(l + 1);
    }
  }
  return out;
}

// rho_l = d^l H / dw^l at w0 for l = 0..l_max, via truncated power-series
// division of the numerator and denominator Taylor expansions.
template <class T>
std::vector<std::complex<T>> dc_derivatives(const BasicRationalTF<T>& tf, EvalPoint at, int l_max) {
  if (l_max < 0 || l_max > 12)
    throw ValidationError("dc_derivatives: l_max must lie in [0, 12]");
  if constexpr (std::is_same_v<T, double>) {
    // The Taylor sums cancel heavily for narrow-band filters; run them in extended precision.
    const auto qx = dc_derivatives(tf.template cast<ext>(), at, l_max);
    std::vector<std::complex<double>> out;
    for (const auto& v : qx) out.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    return out;
  }
  const auto n = unit_circle_taylor(tf.num, at, l_max);
  const auto d = unit_circle_taylor(tf.den, at, l_max);
  if (std::abs(d[0]) <= T(64) * std::numeric_limits<T>::epsilon() * T(tf.den.scale()))
    throw NumericalError("dc_derivatives: denominator vanishes at the expansion point");
  std::vector<std::complex<T>> q(n.size());
  for (std::size_t l = 0; l < n.size(); ++l) {
    std::complex<T> acc = n[l];
    for (std::size_t j = 1; j <= l; ++j) acc -= d[j] * q[l - j];
    q[l] = acc / d[0];
  }
  T fact = 1;
  for (std::size_t l = 0; l < q.size(); ++l) {
    if (l > 0) fact *= T(l);
    q[l] *= fact;
  }
  return q;
}

}  // namespace vmf
