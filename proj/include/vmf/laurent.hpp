#pragma once

// Laurent polynomials in z with powers -K..K, stored centered on z^0.
//
// Convention used across the library: a filter with impulse response h(m)
// (applied as y(n) = sum_m h(m) x(n - m)) has transfer function
// H(z) = sum_m h(m) z^-m, so the coefficient of z^j is h(-j) and z^-1 is the
// causal (forward) delay.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <string>
#include <vector>

#include "vmf/error.hpp"

namespace vmf {

using ext = long double;
using cext = std::complex<long double>;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
auto magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
class BasicLaurentPoly {
 public:
  using value_type = T;

  BasicLaurentPoly() : coeffs_(1, T(0)) {}

  // Coefficients for powers -K..K, ascending; size must be odd.
  explicit BasicLaurentPoly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() % 2 == 0)
      throw ValidationError("Laurent polynomial needs 2K+1 coefficients, got " +
                            std::to_string(coeffs_.size()));
  }

  static BasicLaurentPoly constant(T c) { return BasicLaurentPoly(std::vector<T>{c}); }

  // c * z^power
  static BasicLaurentPoly monomial(int power, T c = T(1)) {
    const int k = std::abs(power);
    std::vector<T> v(2 * k + 1, T(0));
    v[k + power] = c;
    return BasicLaurentPoly(std::move(v));
  }

  // Polynomial in u = z^-1: sum_j u_coeffs[j] z^-j.
  static BasicLaurentPoly from_causal(const std::vector<T>& u_coeffs) {
    const int k = u_coeffs.empty() ? 0 : static_cast<int>(u_coeffs.size()) - 1;
    std::vector<T> v(2 * k + 1, T(0));
    for (int j = 0; j <= k; ++j) v[k - j] = u_coeffs[j];
    return BasicLaurentPoly(std::move(v));
  }

  // Polynomial in z: sum_j z_coeffs[j] z^j.
  static BasicLaurentPoly from_anticausal(const std::vector<T>& z_coeffs) {
    const int k = z_coeffs.empty() ? 0 : static_cast<int>(z_coeffs.size()) - 1;
    std::vector<T> v(2 * k + 1, T(0));
    for (int j = 0; j <= k; ++j) v[k + j] = z_coeffs[j];
    return BasicLaurentPoly(std::move(v));
  }

  int half_order() const { return static_cast<int>(coeffs_.size() / 2); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  T operator[](int power) const {
    const int k = half_order();
    if (power < -k || power > k) return T(0);
    return coeffs_[static_cast<std::size_t>(power + k)];
  }

  void set(int power, T value) {
    if (std::abs(power) > half_order()) *this = padded(std::abs(power));
    coeffs_[static_cast<std::size_t>(power + half_order())] = value;
  }

  BasicLaurentPoly padded(int k) const {
    const int own = half_order();
    if (k <= own) return *this;
    std::vector<T> v(2 * k + 1, T(0));
    for (int j = -own; j <= own; ++j) v[j + k] = (*this)[j];
    return BasicLaurentPoly(std::move(v));
  }

  // Drops matching outer zero pairs (exact zeros only).
  BasicLaurentPoly trimmed() const {
    int k = half_order();
    while (k > 0 && (*this)[k] == T(0) && (*this)[-k] == T(0)) --k;
    std::vector<T> v(2 * k + 1);
    for (int j = -k; j <= k; ++j) v[j + k] = (*this)[j];
    return BasicLaurentPoly(std::move(v));
  }

  template <class Z>
  auto evaluate(const Z& z) const {
    using R = decltype(T() * Z());
    const int k = half_order();
    // Horner on z^k * p(z), then rescale.
    R acc = R(0);
    for (int j = k; j >= -k; --j) acc = acc * z + R((*this)[j]);
    return acc / std::pow(z, k);
  }

  BasicLaurentPoly reflected() const {  // p(1/z)
    std::vector<T> v(coeffs_.rbegin(), coeffs_.rend());
    return BasicLaurentPoly(std::move(v));
  }

  // d/dz
  BasicLaurentPoly derivative() const {
    const int k = half_order();
    BasicLaurentPoly out;
    out = out.padded(k + 1);
    for (int j = -k; j <= k; ++j) {
      if (j == 0) continue;
      out.coeffs_[static_cast<std::size_t>(j - 1 + k + 1)] = T(j) * (*this)[j];
    }
    return out.trimmed_outer();
  }

  template <class U>
  BasicLaurentPoly<U> cast() const {
    std::vector<U> v;
    v.reserve(coeffs_.size());
    for (const T& c : coeffs_) {
      if constexpr (is_complex<T>::value && !is_complex<U>::value) {
        v.push_back(static_cast<U>(c.real()));
      } else {
        v.push_back(static_cast<U>(c));
      }
    }
    return BasicLaurentPoly<U>(std::move(v));
  }

  bool is_symmetric(double tol) const {
    const int k = half_order();
    for (int j = 1; j <= k; ++j)
      if (magnitude((*this)[j] - (*this)[-j]) > tol * scale()) return false;
    return true;
  }

  bool is_antisymmetric(double tol) const {
    const int k = half_order();
    if (magnitude((*this)[0]) > tol * scale()) return false;
    for (int j = 1; j <= k; ++j)
      if (magnitude((*this)[j] + (*this)[-j]) > tol * scale()) return false;
    return true;
  }

  double scale() const {
    double s = 0.0;
    for (const T& c : coeffs_) s = std::max(s, static_cast<double>(magnitude(c)));
    return s > 0.0 ? s : 1.0;
  }

  BasicLaurentPoly& operator+=(const BasicLaurentPoly& o) {
    const int k = std::max(half_order(), o.half_order());
    *this = padded(k);
    for (int j = -o.half_order(); j <= o.half_order(); ++j) coeffs_[j + k] += o[j];
    return *this;
  }
  BasicLaurentPoly& operator-=(const BasicLaurentPoly& o) {
    const int k = std::max(half_order(), o.half_order());
    *this = padded(k);
    for (int j = -o.half_order(); j <= o.half_order(); ++j) coeffs_[j + k] -= o[j];
    return *this;
  }
  BasicLaurentPoly& operator*=(T s) {
    for (T& c : coeffs_) c *= s;
    return *this;
  }

  friend BasicLaurentPoly operator+(BasicLaurentPoly a, const BasicLaurentPoly& b) { return a += b; }
  friend BasicLaurentPoly operator-(BasicLaurentPoly a, const BasicLaurentPoly& b) { return a -= b; }
  friend BasicLaurentPoly operator*(BasicLaurentPoly a, T s) { return a *= s; }
  friend BasicLaurentPoly operator*(T s, BasicLaurentPoly a) { return a *= s; }

  friend BasicLaurentPoly operator*(const BasicLaurentPoly& a, const BasicLaurentPoly& b) {
    const int ka = a.half_order();
    const int kb = b.half_order();
    std::vector<T> v(2 * (ka + kb) + 1, T(0));
    for (int i = -ka; i <= ka; ++i) {
      const T ai = a[i];
      if (ai == T(0)) continue;
      for (int j = -kb; j <= kb; ++j) v[i + j + ka + kb] += ai * b[j];
    }
    return BasicLaurentPoly(std::move(v));
  }

  BasicLaurentPoly pow(int n) const {
    BasicLaurentPoly out = constant(T(1));
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
  }

 private:
  // Like trimmed() but only removes the single zero pair a derivative adds.
  BasicLaurentPoly trimmed_outer() const {
    const int k = half_order();
    if (k > 0 && (*this)[k] == T(0) && (*this)[-k] == T(0)) {
      std::vector<T> v(coeffs_.begin() + 1, coeffs_.end() - 1);
      return BasicLaurentPoly(std::move(v));
    }
    return *this;
  }

  std::vector<T> coeffs_;
};

using LaurentPoly = BasicLaurentPoly<double>;
using LaurentPolyX = BasicLaurentPoly<ext>;

}  // namespace vmf
