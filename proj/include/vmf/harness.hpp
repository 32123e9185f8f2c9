#pragma once

#include <string>
#include <vector>

#include "vmf/design.hpp"

namespace vmf {

enum class BenchStage { lpf, hpf_hessian };
const char* to_string(BenchStage s);

struct BenchRecord {
  Family family = Family::gaussian_fir;
  double sigma = 0.0;
  int threads = 1;
  BenchStage stage = BenchStage::lpf;
  double seconds = 0.0;  // median over `repetitions`
  int width = 0;
  int height = 0;
  int repetitions = 0;
};

struct BenchOptions {
  int width = 2048;
  int height = 2048;
  std::vector<double> sigmas{3, 6, 12, 24};
  std::vector<Family> families{Family::gaussian_fir, Family::repeated_pole};
  std::vector<int> threads;  // empty selects {1, hardware_threads()}
  int repetitions = 5;
  bool stage2 = true;
  unsigned seed = 1;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<std::string> warnings;
  int width = 0;
  int height = 0;
};

// Blur used for timing: Gaussian FIR with K = 5 sigma, or the K = 3
// repeated-pole recursion.
Filter1D bench_blur(Family family, double sigma);

BenchResult bench(const BenchOptions& opt);
std::string bench_csv(const BenchResult& r);

struct BenchTrends {
  double iir_spread = 0.0;      // max / min IIR lpf time over sigma, single thread
  bool fir_increasing = false;  // FIR lpf time strictly increasing in sigma, single thread
  double speedup_single = 0.0;  // FIR / IIR lpf time at the largest sigma, 1 thread
  double speedup_max = 0.0;     // same, at the largest thread count measured
  int max_threads = 1;
};

BenchTrends bench_trends(const BenchResult& r);

}  // namespace vmf
