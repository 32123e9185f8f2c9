#pragma once

#include <string>
#include <variant>
#include <vector>

#include "vmf/rational.hpp"
#include "vmf/three_part.hpp"

namespace vmf {

// Center-indexed FIR taps h(m), m = -K..K, applied as y(n) = sum h(m) x(n-m).
struct FirKernel {
  std::vector<double> taps;
  Parity parity = Parity::symmetric;
  int derivative_order = 0;

  FirKernel() : taps{1.0} {}
  FirKernel(std::vector<double> t, Parity p, int d);

  int half() const { return static_cast<int>(taps.size() / 2); }
  double at(int m) const {
    const int k = half();
    return (m < -k || m > k) ? 0.0 : taps[static_cast<std::size_t>(m + k)];
  }
  double sum() const;

  // H(z) = sum h(m) z^-m
  RationalTF to_rational() const;
  RationalTFX to_rational_x() const;

  static FirKernel impulse() { return FirKernel(); }
};

// Convolution of two kernels (parities combine).
FirKernel cascade(const FirKernel& a, const FirKernel& b);

using Filter1D = std::variant<FirKernel, ThreePartIIR>;

RationalTF to_rational(const Filter1D& f);
Parity parity_of(const Filter1D& f);
bool is_identity(const Filter1D& f);

}  // namespace vmf
