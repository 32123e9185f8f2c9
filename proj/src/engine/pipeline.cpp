#include <sstream>

#include "vmf/design.hpp"
#include "vmf/engine.hpp"
#include "vmf/error.hpp"

namespace vmf {

Image filter_rows(const Image& img, const Filter1D& f, int threads) {
  if (const auto* k = std::get_if<FirKernel>(&f)) return conv_rows(img, *k, threads);
  return iir_rows(img, std::get<ThreePartIIR>(f), threads);
}

Image filter_cols(const Image& img, const Filter1D& f, int threads) {
  if (const auto* k = std::get_if<FirKernel>(&f)) return conv_cols(img, *k, threads);
  return iir_cols(img, std::get<ThreePartIIR>(f), threads);
}

Image apply_separable(const Image& img, const SeparableFilter& f, int threads) {
  Image cur = img;
  for (const auto& s : f.x_stages)
    if (!is_identity(s)) cur = filter_rows(cur, s, threads);
  for (const auto& s : f.y_stages)
    if (!is_identity(s)) cur = filter_cols(cur, s, threads);
  return cur;
}

bool DerivativeField::has(int dx, int dy) const {
  if (dx < 0 || dy < 0 || dx >= D || dy >= D) return false;
  return images[static_cast<std::size_t>(dx * D + dy)].width > 0;
}

const Image& DerivativeField::get(int dx, int dy) const {
  if (!has(dx, dy)) {
    std::ostringstream msg;
    msg << "derivative field has no (" << dx << ", " << dy << ") image";
    throw ValidationError(msg.str());
  }
  return images[static_cast<std::size_t>(dx * D + dy)];
}

Image& DerivativeField::get(int dx, int dy) {
  return const_cast<Image&>(static_cast<const DerivativeField&>(*this).get(dx, dy));
}

DerivativeField derivative_field(const Image& img, const Filter1D& lpf, int D, int threads, bool all_orders,
                                 const std::vector<FirKernel>* hpf) {
  if (D < 1 || D % 2 == 0) throw ValidationError("derivative_field: D must be odd and at least 1");
  return derivatives_of_blurred(filter_cols(filter_rows(img, lpf, threads), lpf, threads), D, threads, all_orders, hpf);
}

DerivativeField derivatives_of_blurred(const Image& blurred, int D, int threads, bool all_orders,
                                       const std::vector<FirKernel>* hpf) {
  if (D < 1 || D % 2 == 0) throw ValidationError("derivative_field: D must be odd and at least 1");
  std::vector<FirKernel> bank;
  if (hpf) {
    if (static_cast<int>(hpf->size()) < D) throw ValidationError("derivative_field: differentiator bank is smaller than D");
    bank.assign(hpf->begin(), hpf->begin() + D);
  } else {
    for (int d = 0; d < D; ++d) bank.push_back(interp_diff(d));
  }
  DerivativeField out;
  out.D = D;
  out.images.resize(static_cast<std::size_t>(D * D));
  for (int dx = 0; dx < D; ++dx) {
    const Image rows = bank[static_cast<std::size_t>(dx)].taps.size() == 1 && bank[static_cast<std::size_t>(dx)].taps[0] == 1.0
                           ? blurred
                           : conv_rows(blurred, bank[static_cast<std::size_t>(dx)], threads);
    for (int dy = 0; dy < D; ++dy) {
      if (!all_orders && dx + dy >= D) continue;
      const auto& k = bank[static_cast<std::size_t>(dy)];
      out.images[static_cast<std::size_t>(dx * D + dy)] =
          (k.taps.size() == 1 && k.taps[0] == 1.0) ? rows : conv_cols(rows, k, threads);
    }
  }
  return out;
}

int support_radius(const Filter1D& f) {
  if (const auto* k = std::get_if<FirKernel>(&f)) return k->half();
  return impulse_extent(std::get<ThreePartIIR>(f), 1e-14);
}

}  // namespace vmf
