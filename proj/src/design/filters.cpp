#include "vmf/filters.hpp"

#include <algorithm>
#include <cmath>

#include "vmf/error.hpp"

namespace vmf {

FirKernel::FirKernel(std::vector<double> t, Parity p, int d) : taps(std::move(t)), parity(p), derivative_order(d) {
  if (taps.empty() || taps.size() % 2 == 0)
    throw ValidationError("FIR kernel needs an odd number of taps");
  if (d < 0) throw ValidationError("derivative order must be non-negative");
  double scale = 0.0;
  for (double v : taps) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * (scale > 0.0 ? scale : 1.0);
  const int k = half();
  const double s = p == Parity::symmetric ? 1.0 : -1.0;
  for (int m = 1; m <= k; ++m)
    if (std::abs(at(-m) - s * at(m)) > tol)
      throw ValidationError(std::string("taps do not have the declared ") + to_string(p) + " parity");
  if (p == Parity::antisymmetric && std::abs(at(0)) > tol)
    throw ValidationError("antisymmetric kernel must have a zero center tap");
}

double FirKernel::sum() const {
  double s = 0.0;
  for (double v : taps) s += v;
  return s;
}

RationalTF FirKernel::to_rational() const {
  std::vector<double> c(taps.rbegin(), taps.rend());
  return {LaurentPoly(std::move(c)), LaurentPoly::constant(1.0)};
}

RationalTFX FirKernel::to_rational_x() const {
  std::vector<ext> c(taps.rbegin(), taps.rend());
  return {LaurentPolyX(std::move(c)), LaurentPolyX::constant(1.0L)};
}

FirKernel cascade(const FirKernel& a, const FirKernel& b) {
  std::vector<double> out(a.taps.size() + b.taps.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.taps.size(); ++i)
    for (std::size_t j = 0; j < b.taps.size(); ++j) out[i + j] += a.taps[i] * b.taps[j];
  const Parity p = a.parity == b.parity ? Parity::symmetric : Parity::antisymmetric;
  // Exact zeros keep the parity check from tripping on rounding.
  if (p == Parity::antisymmetric) out[out.size() / 2] = 0.0;
  const int k = static_cast<int>(out.size() / 2);
  const double s = p == Parity::symmetric ? 1.0 : -1.0;
  for (int m = 1; m <= k; ++m) {
    const double avg = 0.5 * (out[static_cast<std::size_t>(k + m)] + s * out[static_cast<std::size_t>(k - m)]);
    out[static_cast<std::size_t>(k + m)] = avg;
    out[static_cast<std::size_t>(k - m)] = s * avg;
  }
  return FirKernel(std::move(out), p, a.derivative_order + b.derivative_order);
}

RationalTF to_rational(const Filter1D& f) {
  return std::visit([](const auto& v) { return v.to_rational(); }, f);
}

Parity parity_of(const Filter1D& f) {
  return std::visit([](const auto& v) { return v.parity; }, f);
}

bool is_identity(const Filter1D& f) {
  if (const auto* k = std::get_if<FirKernel>(&f)) return k->taps.size() == 1 && k->taps[0] == 1.0;
  const auto& iir = std::get<ThreePartIIR>(f);
  for (double v : iir.b_plus)
    if (v != 0.0) return false;
  return iir.b_zero == 1.0;
}

}  // namespace vmf
