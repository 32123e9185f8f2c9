#include "vmf/blob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "vmf/error.hpp"

namespace vmf {

const char* to_string(Polarity p) { return p == Polarity::bright ? "bright" : "dark"; }

Polarity polarity_from_string(const std::string& s) {
  if (s == "bright") return Polarity::bright;
  if (s == "dark") return Polarity::dark;
  throw ValidationError("polarity must be 'bright' or 'dark', got '" + s + "'");
}

Image hessian_det(const DerivativeField& field, double sigma) {
  const Image& d20 = field.get(2, 0);
  const Image& d02 = field.get(0, 2);
  const Image& d11 = field.get(1, 1);
  Image out(d20.width, d20.height);
  const double s4 = sigma * sigma * sigma * sigma;
  for (std::size_t i = 0; i < out.size(); ++i) out.px[i] = s4 * (d20.px[i] * d02.px[i] - d11.px[i] * d11.px[i]);
  return out;
}

DisplacementField displacement(const DerivativeField& field) {
  const Image& d10 = field.get(1, 0);
  const Image& d01 = field.get(0, 1);
  const Image& d20 = field.get(2, 0);
  const Image& d02 = field.get(0, 2);
  const Image& d11 = field.get(1, 1);
  DisplacementField out{Image(d10.width, d10.height), Image(d10.width, d10.height),
                        std::vector<std::uint8_t>(d10.size(), 0)};
  for (std::size_t i = 0; i < d10.size(); ++i) {
    const double h = d20.px[i] * d02.px[i] - d11.px[i] * d11.px[i];
    if (!(std::abs(h) >= 1e-12)) {
      out.dx.px[i] = std::numeric_limits<double>::quiet_NaN();
      out.dy.px[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    out.dx.px[i] = (d01.px[i] * d11.px[i] - d02.px[i] * d10.px[i]) / h;
    out.dy.px[i] = (d10.px[i] * d11.px[i] - d20.px[i] * d01.px[i]) / h;
    out.valid[i] = 1;
  }
  return out;
}

Filter1D blob_blur(Family family, double sigma) {
  switch (family) {
    case Family::repeated_pole:
      return repeated_pole_blur(sigma, 1, 2);
    case Family::butterworth:
      return butterworth_blur(sigma, 1);
    case Family::gaussian_fir:
      return gaussian_fir(sigma, 0, static_cast<int>(std::ceil(5.0 * sigma)));
    case Family::colored_sg:
      return colored_sg_blur(sigma, 1);
    case Family::blunt_exponential:
      return blunt_exponential_blur(sigma, 3);
    case Family::butterworth_appendix:
      return butterworth_appendix(sigma);
    default:
      throw ValidationError(std::string("'") + to_string(family) + "' is not a blur family");
  }
}

DetectStages detect_stages(const Image& img, const DetectOptions& opt) {
  if (!(opt.lambda > 0.0)) throw ValidationError("lambda must be positive");
  const double sigma = opt.lambda / 2.0;
  DetectStages st;
  st.field = derivative_field(img, blob_blur(opt.family, sigma), 3, opt.threads);
  st.ndet = hessian_det(st.field, sigma);
  st.disp = displacement(st.field);
  return st;
}

std::vector<Detection> select_detections(const DetectStages& st, const DetectOptions& opt, double t1, double t2) {
  if (!(t1 > 0.0)) throw ValidationError("t1 must be positive");
  if (!(t2 > 0.0)) throw ValidationError("t2 must be positive");
  if (opt.crop_border < 0) throw ValidationError("crop border must be non-negative");
  const Image& nd = st.ndet;
  const Image& d20 = st.field.get(2, 0);
  const Image& d02 = st.field.get(0, 2);
  std::vector<Detection> cand;
  const int b = opt.crop_border;
  for (int y = b; y < nd.height - b; ++y)
    for (int x = b; x < nd.width - b; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(nd.width) + static_cast<std::size_t>(x);
      if (!(nd.px[i] > t1) || !st.disp.valid[i]) continue;
      const double dx = st.disp.dx.px[i], dy = st.disp.dy.px[i];
      if (!(std::hypot(dx, dy) <= t2)) continue;
      const double trace = d20.px[i] + d02.px[i];
      if (opt.polarity == Polarity::bright ? !(trace < 0.0) : !(trace > 0.0)) continue;
      cand.push_back({x, y, dx, dy, nd.px[i], opt.lambda});
    }
  if (!opt.suppress || cand.empty()) return cand;

  // Keep candidates that beat every other candidate within lambda / 2;
  // ties go to the smaller (y, x).
  const double r = opt.lambda / 2.0;
  const int cell = std::max(1, static_cast<int>(std::ceil(r)));
  std::unordered_map<long long, std::vector<std::size_t>> grid;
  auto key = [](int cx, int cy) { return (static_cast<long long>(cy) << 32) ^ static_cast<unsigned>(cx); };
  for (std::size_t i = 0; i < cand.size(); ++i) grid[key(cand[i].x / cell, cand[i].y / cell)].push_back(i);
  auto beats = [](const Detection& a, const Detection& b2) {
    if (a.ndet != b2.ndet) return a.ndet > b2.ndet;
    return std::tie(a.y, a.x) < std::tie(b2.y, b2.x);
  };
  std::vector<Detection> out;
  for (const auto& c : cand) {
    bool keep = true;
    const int cx = c.x / cell, cy = c.y / cell;
    for (int gy = cy - 1; gy <= cy + 1 && keep; ++gy)
      for (int gx = cx - 1; gx <= cx + 1 && keep; ++gx) {
        const auto it = grid.find(key(gx, gy));
        if (it == grid.end()) continue;
        for (std::size_t j : it->second) {
          const auto& o = cand[j];
          if (o.x == c.x && o.y == c.y) continue;
          if (std::hypot(double(o.x - c.x), double(o.y - c.y)) > r) continue;
          if (beats(o, c)) {
            keep = false;
            break;
          }
        }
      }
    if (keep) out.push_back(c);
  }
  return out;
}

std::vector<Detection> detect(const Image& img, const DetectOptions& opt) {
  const double t2 = opt.t2 < 0.0 ? opt.lambda / 4.0 : opt.t2;
  double t1 = opt.t1;
  if (!(t1 > 0.0)) t1 = calibrate_t1(opt.lambda, opt.family, opt.calibration_eccentricity, opt.polarity, opt.threads);
  const auto st = detect_stages(img, opt);
  return select_detections(st, opt, t1, t2);
}

double calibrate_t1(double lambda, Family family, double eccentricity, Polarity polarity, int threads) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!(eccentricity >= 1.0)) throw ValidationError("eccentricity must be at least 1");
  const int size = std::max(64, static_cast<int>(std::ceil(12.0 * lambda)));
  EllipseScene scene;
  scene.width = size;
  scene.height = size;
  scene.background = polarity == Polarity::dark ? 1.0 : 0.0;
  scene.ellipses.push_back({size / 2.0, size / 2.0, lambda, eccentricity, 0.0, polarity == Polarity::dark ? 0.0 : 1.0});
  DetectOptions opt;
  opt.lambda = lambda;
  opt.family = family;
  opt.threads = threads;
  const auto st = detect_stages(render_scene(scene), opt);
  const Image& d20 = st.field.get(2, 0);
  const Image& d02 = st.field.get(0, 2);
  double peak = 0.0;
  for (std::size_t i = 0; i < st.ndet.size(); ++i) {
    const double trace = d20.px[i] + d02.px[i];
    const bool ok = polarity == Polarity::bright ? trace < 0.0 : trace > 0.0;
    if (ok) peak = std::max(peak, st.ndet.px[i]);
  }
  if (!(peak > 0.0)) throw NumericalError("threshold calibration found no blob response");
  return 0.5 * peak;
}

std::string detections_jsonl(const std::vector<Detection>& dets) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& d : dets)
    out << "{\"x\":" << d.x << ",\"y\":" << d.y << ",\"dx\":" << d.dx << ",\"dy\":" << d.dy << ",\"ndet\":" << d.ndet
        << ",\"lambda\":" << d.lambda << "}\n";
  return out.str();
}

Image overlay(const Image& img, const std::vector<Detection>& dets) {
  Image out = img;
  for (const auto& d : dets)
    if (d.x >= 0 && d.y >= 0 && d.x < out.width && d.y < out.height) out.at(d.x, d.y) = 1.0;
  return out;
}

}  // namespace vmf
