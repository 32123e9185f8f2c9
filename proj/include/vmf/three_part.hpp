#pragma once

// Realizable three-part difference equation for a non-causal IIR filter:
//
//   y+(n) = sum_{m=1..K} b+_m x(n-m) - sum_{m=1..K} a+_m y+(n-m)   (forward)
//   y-(n) = sum_{m=1..K} b-_m x(n+m) - sum_{m=1..K} a-_m y-(n+m)   (backward)
//   y0(n) = b0 x(n)
//   y(n)  = y+(n) + y-(n) + y0(n)
//
// with a- = a+ and b- = +/- b+ according to the parity of the response.

#include <complex>
#include <string>
#include <type_traits>
#include <vector>

#include "vmf/laurent.hpp"
#include "vmf/rational.hpp"

namespace vmf {

enum class Parity { symmetric, antisymmetric };

inline const char* to_string(Parity p) { return p == Parity::symmetric ? "sym" : "anti"; }

template <class T>
struct BasicThreePart {
  std::vector<T> b_plus;  // m = 1..K
  std::vector<T> a_plus;  // m = 1..K, a+_0 = 1 implied
  T b_zero = T(0);
  Parity parity = Parity::symmetric;

  int order() const { return static_cast<int>(a_plus.size()); }

  T sign() const { return parity == Parity::symmetric ? T(1) : T(-1); }
  std::vector<T> b_minus() const {
    std::vector<T> out(b_plus);
    for (T& v : out) v *= sign();
    return out;
  }
  const std::vector<T>& a_minus() const { return a_plus; }

  // A+(z) = 1 + sum a+_m z^-m
  BasicLaurentPoly<T> forward_den() const {
    std::vector<T> u(a_plus.size() + 1);
    u[0] = T(1);
    for (std::size_t m = 0; m < a_plus.size(); ++m) u[m + 1] = a_plus[m];
    return BasicLaurentPoly<T>::from_causal(u);
  }
  // B+(z) = sum b+_m z^-m
  BasicLaurentPoly<T> forward_num() const {
    std::vector<T> u(b_plus.size() + 1, T(0));
    for (std::size_t m = 0; m < b_plus.size(); ++m) u[m + 1] = b_plus[m];
    return BasicLaurentPoly<T>::from_causal(u);
  }

  // H = B+/A+ + b0 + B-/A- over the common denominator A+ A-.
  BasicRationalTF<T> to_rational() const {
    if constexpr (std::is_same_v<T, double>) {
      // Products in extended precision keep the coefficient pairs +j/-j identical.
      return cast<ext>().to_rational().template cast<double>();
    }
    const auto ap = forward_den();
    const auto am = ap.reflected();
    const auto bp = forward_num();
    const auto bm = bp.reflected() * sign();
    BasicRationalTF<T> tf;
    tf.num = bp * am + (ap * am) * b_zero + bm * ap;
    tf.den = ap * am;
    return tf;
  }

  template <class U>
  BasicThreePart<U> cast() const {
    BasicThreePart<U> out;
    out.b_plus.assign(b_plus.begin(), b_plus.end());
    out.a_plus.assign(a_plus.begin(), a_plus.end());
    out.b_zero = static_cast<U>(b_zero);
    out.parity = parity;
    return out;
  }
};

using ThreePartIIR = BasicThreePart<double>;
using ThreePartIIRX = BasicThreePart<ext>;

// rho_l of a realized filter, summed part by part (B+/A+, b0, B-/A-). This
// avoids the cancellation in the common denominator A+ A-, which is tiny near
// dc for narrow blurs.
template <class T>
std::vector<std::complex<T>> dc_derivatives(const BasicThreePart<T>& f, EvalPoint at, int l_max) {
  if constexpr (std::is_same_v<T, double>) {
    const auto qx = dc_derivatives(f.template cast<ext>(), at, l_max);
    std::vector<std::complex<double>> out;
    for (const auto& v : qx) out.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    return out;
  } else {
    BasicRationalTF<T> fwd;
    fwd.num = f.forward_num();
    fwd.den = f.forward_den();
    BasicRationalTF<T> bwd;
    bwd.num = fwd.num.reflected() * f.sign();
    bwd.den = fwd.den.reflected();
    auto out = dc_derivatives(fwd, at, l_max);
    const auto back = dc_derivatives(bwd, at, l_max);
    for (std::size_t l = 0; l < out.size(); ++l) out[l] += back[l];
    out[0] += f.b_zero;
    return out;
  }
}

// Denominator factored as a_zero * A+(z) * A-(z).
template <class T>
struct BasicDenominatorSplit {
  std::vector<T> a_plus;  // [1, a1, ..., aK]
  T a_zero = T(1);
  std::vector<std::complex<T>> poles;  // roots of A+ (inside the unit circle)

  const std::vector<T>& a_minus() const { return a_plus; }
};

using DenominatorSplit = BasicDenominatorSplit<double>;
using DenominatorSplitX = BasicDenominatorSplit<ext>;

// Roots of sum_j c[j] z^j (ascending coefficients); companion-matrix
// eigenvalues followed by Newton polishing.
template <class T>
std::vector<std::complex<T>> polynomial_roots(const std::vector<T>& ascending);

// Monic-at-a0 polynomial 1 + a1 u + ... from roots: prod (1 - p u).
template <class T>
std::vector<T> poly_from_roots(const std::vector<std::complex<T>>& roots);

// Splits a symmetric denominator by root finding.
template <class T>
BasicDenominatorSplit<T> split_denominator(const BasicLaurentPoly<T>& den);

// Completes a split when the forward poles are already known in closed form.
template <class T>
BasicDenominatorSplit<T> split_from_poles(const BasicLaurentPoly<T>& den,
                                          const std::vector<std::complex<T>>& poles);

// Solves for the forward/central/backward numerators given a split.
template <class T>
BasicThreePart<T> three_part_decompose(const BasicRationalTF<T>& tf,
                                       const BasicDenominatorSplit<T>& split, Parity parity);

template <class T>
BasicThreePart<T> three_part_decompose(const BasicRationalTF<T>& tf, Parity parity) {
  return three_part_decompose(tf, split_denominator(tf.den), parity);
}

// Realization check: every root of A+ strictly inside the unit circle.
bool is_stable(const ThreePartIIR& f);

// Two-sided impulse response h(m), m = -half..half, by series expansion of
// the forward part.
std::vector<double> impulse_response(const ThreePartIIR& f, int half);

// Smallest half-length at which |h(m)| has fallen below rel * max|h|.
int impulse_extent(const ThreePartIIR& f, double rel, int cap = 1 << 20);

}  // namespace vmf
