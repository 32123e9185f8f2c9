#include "vmf/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <new>
#include <random>
#include <sstream>

#include "vmf/blob.hpp"
#include "vmf/engine.hpp"
#include "vmf/error.hpp"

namespace vmf {

const char* to_string(BenchStage s) { return s == BenchStage::lpf ? "lpf" : "hpf+hessian"; }

Filter1D bench_blur(Family family, double sigma) {
  switch (family) {
    case Family::gaussian_fir:
      return gaussian_fir(sigma, 0, static_cast<int>(std::ceil(5.0 * sigma)));
    case Family::repeated_pole:
      return repeated_pole_blur(sigma, 1, 2);
    default:
      throw ValidationError(std::string("bench supports gaussian_fir and repeated_pole, not ") + to_string(family));
  }
}

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double median_time(int reps, F&& fn) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

// Reserves roughly what one timing pass needs; halves the image until it fits.
bool fits(int w, int h) {
  try {
    std::vector<double> probe(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 12);
    probe.back() = 1.0;
    return true;
  } catch (const std::bad_alloc&) {
    return false;
  }
}

}  // namespace

BenchResult bench(const BenchOptions& opt) {
  if (opt.width < 1 || opt.height < 1) throw ValidationError("bench dimensions must be positive");
  if (opt.repetitions < 5) throw ValidationError("bench needs at least 5 repetitions");
  if (opt.sigmas.empty() || opt.families.empty()) throw ValidationError("bench needs at least one sigma and one family");
  BenchResult res;
  int w = opt.width, h = opt.height;
  while (!fits(w, h)) {
    if (w < 128 || h < 128) throw NumericalError("not enough memory for a benchmark image");
    w /= 2;
    h /= 2;
    std::ostringstream msg;
    msg << "insufficient memory; reducing benchmark image to " << w << "x" << h;
    res.warnings.push_back(msg.str());
  }
  res.width = w;
  res.height = h;
  std::vector<int> threads = opt.threads;
  if (threads.empty()) {
    threads = {1};
    if (hardware_threads() > 1) threads.push_back(hardware_threads());
  }
  Image img(w, h);
  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : img.px) v = u(rng);

  for (Family fam : opt.families)
    for (double sigma : opt.sigmas) {
      const Filter1D blur = bench_blur(fam, sigma);
      for (int t : threads) {
        Image blurred;
        const double lpf = median_time(opt.repetitions, [&] { blurred = filter_cols(filter_rows(img, blur, t), blur, t); });
        res.records.push_back({fam, sigma, t, BenchStage::lpf, lpf, w, h, opt.repetitions});
        if (!opt.stage2) continue;
        // Stage 2: differentiators, Hessian, thresholds; independent of the blur.
        DetectOptions dopt;
        dopt.lambda = 2.0 * sigma;
        dopt.threads = t;
        const double s2 = median_time(opt.repetitions, [&] {
          DetectStages st;
          st.field = derivatives_of_blurred(blurred, 3, t);
          st.ndet = hessian_det(st.field, sigma);
          st.disp = displacement(st.field);
          (void)select_detections(st, dopt, 1e-3, dopt.lambda / 4.0);
        });
        res.records.push_back({fam, sigma, t, BenchStage::hpf_hessian, s2, w, h, opt.repetitions});
      }
    }
  return res;
}

std::string bench_csv(const BenchResult& r) {
  std::ostringstream out;
  out << "family,sigma,threads,stage,seconds,width,height,repetitions\n";
  char buf[64];
  for (const auto& rec : r.records) {
    std::snprintf(buf, sizeof buf, "%.17g", rec.seconds);
    out << to_string(rec.family) << ',' << rec.sigma << ',' << rec.threads << ',' << to_string(rec.stage) << ',' << buf
        << ',' << rec.width << ',' << rec.height << ',' << rec.repetitions << '\n';
  }
  return out.str();
}

BenchTrends bench_trends(const BenchResult& r) {
  BenchTrends tr;
  std::map<double, double> fir1, iir1;
  std::map<int, std::map<double, std::pair<double, double>>> by_threads;  // threads -> sigma -> (fir, iir)
  for (const auto& rec : r.records) {
    if (rec.stage != BenchStage::lpf) continue;
    auto& cell = by_threads[rec.threads][rec.sigma];
    if (rec.family == Family::gaussian_fir) cell.first = rec.seconds;
    if (rec.family == Family::repeated_pole) cell.second = rec.seconds;
    tr.max_threads = std::max(tr.max_threads, rec.threads);
  }
  if (!by_threads.count(1)) throw ValidationError("bench_trends needs single-thread records");
  const auto& single = by_threads.at(1);
  double lo = INFINITY, hi = 0.0, prev = -1.0;
  tr.fir_increasing = true;
  for (const auto& [sigma, t] : single) {
    if (t.second > 0.0) {
      lo = std::min(lo, t.second);
      hi = std::max(hi, t.second);
    }
    if (!(t.first > prev)) tr.fir_increasing = false;
    prev = t.first;
  }
  tr.iir_spread = hi > 0.0 ? hi / lo : 0.0;
  auto speedup = [](const std::map<double, std::pair<double, double>>& m) {
    const auto& last = m.rbegin()->second;
    return last.second > 0.0 ? last.first / last.second : 0.0;
  };
  tr.speedup_single = speedup(single);
  tr.speedup_max = speedup(by_threads.at(tr.max_threads));
  return tr;
}

}  // namespace vmf
