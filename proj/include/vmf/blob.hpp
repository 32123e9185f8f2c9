#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vmf/design.hpp"
#include "vmf/engine.hpp"

namespace vmf {

struct Detection {
  int x = 0;
  int y = 0;
  double dx = 0.0;
  double dy = 0.0;
  double ndet = 0.0;
  double lambda = 0.0;
};

enum class Polarity { bright, dark };

const char* to_string(Polarity p);
Polarity polarity_from_string(const std::string& s);

// sigma^4 (D20 D02 - D11^2)
Image hessian_det(const DerivativeField& field, double sigma);

struct DisplacementField {
  Image dx;
  Image dy;
  std::vector<std::uint8_t> valid;  // 0 where |H| < 1e-12
};

// Offset from the pixel to the stationary point of the fitted quadratic.
DisplacementField displacement(const DerivativeField& field);

struct DetectOptions {
  double lambda = 16.0;
  Family family = Family::repeated_pole;
  double t1 = 0.0;        // <= 0 selects the calibrated default
  double t2 = -1.0;       // < 0 selects lambda / 4; +inf disables Threshold #2
  Polarity polarity = Polarity::dark;
  int threads = 1;
  int crop_border = 0;
  bool suppress = true;   // non-maximum suppression within lambda / 2
  double calibration_eccentricity = 2.0;  // blob shape used when t1 is calibrated
};

// Blur used for a family at scale sigma (= lambda / 2).
Filter1D blob_blur(Family family, double sigma);

std::vector<Detection> detect(const Image& img, const DetectOptions& opt);

// Lower-level pieces of detect(), exposed for tests and tools.
struct DetectStages {
  DerivativeField field;
  Image ndet;
  DisplacementField disp;
};
DetectStages detect_stages(const Image& img, const DetectOptions& opt);
std::vector<Detection> select_detections(const DetectStages& st, const DetectOptions& opt, double t1, double t2);

// 0.5 x the peak ndet of a single synthetic ellipse with semi-major axis
// lambda and the given eccentricity (a / b), rendered on an otherwise blank canvas.
double calibrate_t1(double lambda, Family family, double eccentricity, Polarity polarity, int threads = 1);

struct Ellipse {
  double cx = 0.0;
  double cy = 0.0;
  double a = 1.0;             // semi-major axis, pixels
  double eccentricity = 1.0;  // a / b
  double theta = 0.0;         // radians, major axis from +x towards +y
  double value = 0.0;         // fill intensity
};

struct EllipseScene {
  int width = 1024;
  int height = 768;
  double background = 1.0;
  std::vector<Ellipse> ellipses;
};

// Anti-aliased (4 x 4 supersampled) rasterization.
Image render_scene(const EllipseScene& scene);

// Semi-major axes 4, 8, 16, 32, 64 across, orientations 0..45 degrees down.
EllipseScene preset_scene(double eccentricity);
const std::vector<double>& preset_axes();
const std::vector<double>& preset_column_x();
const std::vector<double>& preset_row_y();
const std::vector<double>& preset_angles_deg();

EllipseScene scene_from_json(const std::string& text);
std::string scene_to_json(const EllipseScene& scene);

std::string detections_jsonl(const std::vector<Detection>& dets);
// Copy of img with detection pixels set to 1 (the PGM maximum).
Image overlay(const Image& img, const std::vector<Detection>& dets);

}  // namespace vmf
