#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "vmf/blob.hpp"
#include "vmf/error.hpp"

namespace vmf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kSuper = 4;

// Half-extents of the axis-aligned bounding box of a rotated ellipse.
void half_extents(const Ellipse& e, double* ex, double* ey) {
  const double b = e.a / e.eccentricity;
  const double c = std::cos(e.theta), s = std::sin(e.theta);
  *ex = std::sqrt(e.a * e.a * c * c + b * b * s * s);
  *ey = std::sqrt(e.a * e.a * s * s + b * b * c * c);
}

}  // namespace

Image render_scene(const EllipseScene& scene) {
  Image img(scene.width, scene.height, scene.background);
  for (const auto& e : scene.ellipses) {
    if (!(e.a > 0.0)) throw ValidationError("ellipse semi-major axis must be positive");
    if (!(e.eccentricity >= 1.0)) throw ValidationError("ellipse eccentricity (a/b) must be at least 1");
    double ex, ey;
    half_extents(e, &ex, &ey);
    if (e.cx - ex < -0.5 || e.cx + ex > scene.width - 0.5 || e.cy - ey < -0.5 || e.cy + ey > scene.height - 0.5) {
      std::ostringstream msg;
      msg << "ellipse at (" << e.cx << ", " << e.cy << ") with a=" << e.a << " does not fit inside the canvas";
      throw ValidationError(msg.str());
    }
    const double b = e.a / e.eccentricity;
    const double c = std::cos(e.theta), s = std::sin(e.theta);
    const int x0 = std::max(0, static_cast<int>(std::floor(e.cx - ex)) - 1);
    const int x1 = std::min(scene.width - 1, static_cast<int>(std::ceil(e.cx + ex)) + 1);
    const int y0 = std::max(0, static_cast<int>(std::floor(e.cy - ey)) - 1);
    const int y1 = std::min(scene.height - 1, static_cast<int>(std::ceil(e.cy + ey)) + 1);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        int inside = 0;
        for (int sy = 0; sy < kSuper; ++sy)
          for (int sx = 0; sx < kSuper; ++sx) {
            const double px = x - 0.5 + (sx + 0.5) / kSuper - e.cx;
            const double py = y - 0.5 + (sy + 0.5) / kSuper - e.cy;
            const double u = c * px + s * py;
            const double v = -s * px + c * py;
            if ((u * u) / (e.a * e.a) + (v * v) / (b * b) <= 1.0) ++inside;
          }
        if (inside == 0) continue;
        const double frac = static_cast<double>(inside) / (kSuper * kSuper);
        double& p = img.at(x, y);
        p = p * (1.0 - frac) + e.value * frac;
      }
  }
  return img;
}

const std::vector<double>& preset_axes() {
  static const std::vector<double> v{4, 8, 16, 32, 64};
  return v;
}

const std::vector<double>& preset_column_x() {
  static const std::vector<double> v{70, 170, 300, 480, 800};
  return v;
}

const std::vector<double>& preset_row_y() {
  static const std::vector<double> v = [] {
    std::vector<double> r;
    for (int i = 0; i < 5; ++i) r.push_back(77.0 + 153.6 * i);
    return r;
  }();
  return v;
}

const std::vector<double>& preset_angles_deg() {
  static const std::vector<double> v{0.0, 11.25, 22.5, 33.75, 45.0};
  return v;
}

EllipseScene preset_scene(double eccentricity) {
  EllipseScene scene;
  scene.width = 1024;
  scene.height = 768;
  scene.background = 1.0;
  for (std::size_t r = 0; r < preset_row_y().size(); ++r)
    for (std::size_t c = 0; c < preset_axes().size(); ++c)
      scene.ellipses.push_back({preset_column_x()[c], preset_row_y()[r], preset_axes()[c], eccentricity,
                                preset_angles_deg()[r] * kPi / 180.0, 0.0});
  return scene;
}

EllipseScene scene_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scene JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("scene JSON must be an object");
  try {
    EllipseScene scene;
    if (j.contains("preset")) {
      const auto name = j.at("preset").get<std::string>();
      if (name == "ecc2") scene = preset_scene(2.0);
      else if (name == "ecc4") scene = preset_scene(4.0);
      else throw ValidationError("unknown scene preset '" + name + "' (expected ecc2 or ecc4)");
      return scene;
    }
    scene.width = j.value("width", 1024);
    scene.height = j.value("height", 768);
    scene.background = j.value("background", 1.0);
    if (scene.width < 1 || scene.height < 1) throw ValidationError("scene dimensions must be positive");
    if (j.contains("ellipses")) {
      for (const auto& e : j.at("ellipses")) {
        Ellipse el;
        el.cx = e.at("cx").get<double>();
        el.cy = e.at("cy").get<double>();
        el.a = e.at("a").get<double>();
        el.eccentricity = e.value("ecc", 1.0);
        el.theta = e.value("theta_deg", 0.0) * kPi / 180.0;
        el.value = e.value("value", 0.0);
        scene.ellipses.push_back(el);
      }
    }
    return scene;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid scene JSON: ") + e.what());
  }
}

std::string scene_to_json(const EllipseScene& scene) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& e : scene.ellipses)
    arr.push_back({{"cx", e.cx}, {"cy", e.cy}, {"a", e.a}, {"ecc", e.eccentricity},
                   {"theta_deg", e.theta * 180.0 / kPi}, {"value", e.value}});
  return json{{"width", scene.width}, {"height", scene.height}, {"background", scene.background}, {"ellipses", arr}}.dump(2);
}

}  // namespace vmf
