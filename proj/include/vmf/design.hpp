#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vmf/filters.hpp"
#include "vmf/three_part.hpp"

namespace vmf {

enum class Family {
  interp_diff,
  gaussian_fir,
  fir_vm_bank,
  colored_sg,
  repeated_pole,
  butterworth,
  blunt_exponential,
  butterworth_appendix,
};

const char* to_string(Family f);
Family family_from_string(const std::string& name);

enum class CascadeMode { standalone, behind_blur };

struct DesignSpec {
  Family family = Family::repeated_pole;
  double sigma = 8.0;  // lambda for the blunt-exponential and appendix Butterworth families
  int D = 3;
  int L_pi_bar = 2;
  int d = 0;
  int K = 0;  // 0 selects the family default
  CascadeMode mode = CascadeMode::standalone;

  int L_D() const { return (D - 1) / 2; }
  void validate() const;
};

// rho = F c, with F and rho real-or-imaginary per parity; solved in extended precision.
struct ConstraintSystem {
  std::vector<std::vector<std::complex<double>>> F;
  std::vector<std::complex<double>> rho;
  std::vector<double> c;
  double condition = 0.0;
};

inline int delta_of(int d) { return d % 2; }

// Central-difference differentiator with d zeros at z = 1 and d mod 2 zeros at z = -1.
FirKernel interp_diff(int d);

// Sampled, dc-normalized Gaussian derivative.
FirKernel gaussian_fir(double sigma, int d, int K);

// Vanishing-moment derivative bank h_0 .. h_{D-1}.
std::vector<FirKernel> fir_vm_bank(int D, int L_pi_bar, CascadeMode mode, std::vector<ConstraintSystem>* systems = nullptr);

// Minimum stop-band noise gain blur with vanishing moments up to 2 L_D.
FirKernel colored_sg_blur(double sigma, int L_D);
int colored_sg_half_length(double sigma, int L_D);
double colored_sg_cutoff(double sigma);

ThreePartIIRX repeated_pole_blur_x(double sigma, int L_D, int L_pi_bar, ConstraintSystem* system = nullptr);
ThreePartIIR repeated_pole_blur(double sigma, int L_D, int L_pi_bar);

double butterworth_cutoff(double sigma);
ThreePartIIRX butterworth_x(ext omega_c, int K);
ThreePartIIR butterworth_blur(double sigma, int L_D);

ThreePartIIRX blunt_exponential_x(ext p, int K);
ThreePartIIR blunt_exponential_blur(double lambda, int K);

ThreePartIIR butterworth_appendix(double lambda);

// The full non-causal transfer function before decomposition.
RationalTFX repeated_pole_tf(ext p, int L_D, int L_pi_bar, ConstraintSystem* system = nullptr);
RationalTFX butterworth_tf(ext omega_c, int K);
RationalTFX blunt_exponential_tf(ext p, int K);

// Family dispatch used by the CLI and C API.
Filter1D design(const DesignSpec& spec);

}  // namespace vmf
