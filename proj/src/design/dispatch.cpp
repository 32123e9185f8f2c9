#include <cmath>
#include <string>

#include "vmf/design.hpp"
#include "vmf/error.hpp"

namespace vmf {

namespace {

struct FamilyName {
  Family family;
  const char* name;
};

constexpr FamilyName kFamilies[] = {
    {Family::interp_diff, "interp_diff"},
    {Family::gaussian_fir, "gaussian_fir"},
    {Family::fir_vm_bank, "fir_vm_bank"},
    {Family::colored_sg, "colored_sg"},
    {Family::repeated_pole, "repeated_pole"},
    {Family::butterworth, "butterworth"},
    {Family::blunt_exponential, "blunt_exponential"},
    {Family::butterworth_appendix, "butterworth_appendix"},
};

}  // namespace

const char* to_string(Family f) {
  for (const auto& e : kFamilies)
    if (e.family == f) return e.name;
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (const auto& e : kFamilies)
    if (name == e.name) return e.family;
  throw ValidationError("unknown filter family '" + name + "'");
}

void DesignSpec::validate() const {
  const bool needs_scale = family != Family::interp_diff && family != Family::fir_vm_bank;
  if (needs_scale && !(sigma > 0.0)) throw ValidationError("sigma must be positive");
  if (needs_scale && !std::isfinite(sigma)) throw ValidationError("sigma must be finite");
  if (D < 1 || D % 2 == 0) throw ValidationError("model order D must be odd and at least 1");
  if (L_pi_bar < 0) throw ValidationError("L_pi_bar must be non-negative");
  if (d < 0) throw ValidationError("derivative order must be non-negative");
  if (K < 0) throw ValidationError("K must be non-negative");
}

Filter1D design(const DesignSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::interp_diff:
      return interp_diff(spec.d);
    case Family::gaussian_fir: {
      const int k = spec.K > 0 ? spec.K : static_cast<int>(std::ceil(5.0 * spec.sigma));
      return gaussian_fir(spec.sigma, spec.d, k);
    }
    case Family::fir_vm_bank: {
      const auto bank = fir_vm_bank(spec.D, spec.L_pi_bar, spec.mode);
      if (spec.d >= spec.D) throw ValidationError("derivative order must be below D");
      return bank[static_cast<std::size_t>(spec.d)];
    }
    case Family::colored_sg:
      return colored_sg_blur(spec.sigma, spec.L_D());
    case Family::repeated_pole:
      return repeated_pole_blur(spec.sigma, spec.L_D(), spec.L_pi_bar);
    case Family::butterworth:
      return butterworth_blur(spec.sigma, spec.L_D());
    case Family::blunt_exponential:
      return blunt_exponential_blur(spec.sigma, spec.K > 0 ? spec.K : 3);
    case Family::butterworth_appendix:
      return butterworth_appendix(spec.sigma);
  }
  throw ValidationError("unknown filter family");
}

}  // namespace vmf
