#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "vmf/error.hpp"
#include "vmf/three_part.hpp"

namespace vmf {

template <class T>
BasicThreePart<T> three_part_decompose(const BasicRationalTF<T>& tf,
                                       const BasicDenominatorSplit<T>& split, Parity parity) {
  const auto num = tf.num.trimmed();
  const int kd = static_cast<int>(split.a_plus.size()) - 1;
  const int k = std::max(kd, num.half_order());
  if (k > 64) throw ValidationError("three_part_decompose: order too large");
  std::vector<T> a(static_cast<std::size_t>(k) + 1, T(0));
  std::copy(split.a_plus.begin(), split.a_plus.end(), a.begin());
  auto an = [&](int n) { return (n >= 0 && n <= k) ? a[static_cast<std::size_t>(n)] : T(0); };

  // Unknown vector [a0 b+_K .. a0 b+_1, a0 b0, a0 b-_1 .. a0 b-_K]; row r is z^(r-K).
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  const int n = 2 * k + 1;
  Mat m = Mat::Zero(n, n);
  Vec rhs(n);
  for (int r = 0; r < n; ++r) rhs(r) = num[r - k];
  for (int mm = 1; mm <= k; ++mm) {
    const int col_plus = k - mm;
    const int col_minus = k + mm;
    for (int j = 0; j <= k; ++j) {
      // B+ A-: b+_m z^-m * a_j z^j
      m(j - mm + k, col_plus) += an(j);
      // B- A+: b-_m z^m * a_j z^-j
      m(mm - j + k, col_minus) += an(j);
    }
  }
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) m(j - i + k, k) += an(i) * an(j);

  Eigen::PartialPivLU<Mat> lu(m);
  const T rcond = lu.rcond();
  if (!(rcond > T(64) * std::numeric_limits<T>::epsilon())) {
    std::ostringstream msg;
    msg << "decomposition matrix is singular (condition estimate " << 1.0 / static_cast<double>(rcond) << ")";
    throw NumericalError(msg.str());
  }
  const Vec x = lu.solve(rhs);

  BasicThreePart<T> out;
  out.parity = parity;
  out.a_plus.assign(a.begin() + 1, a.end());
  const T sgn = parity == Parity::symmetric ? T(1) : T(-1);
  T scale = std::abs(x(k));
  for (int i = 0; i < n; ++i) scale = std::max(scale, T(std::abs(x(i))));
  if (scale == T(0)) scale = T(1);
  out.b_plus.resize(static_cast<std::size_t>(k));
  for (int mm = 1; mm <= k; ++mm) {
    const T bp = x(k - mm);
    const T bm = x(k + mm);
    if (std::abs(bm - sgn * bp) > T(1e-8) * scale) {
      std::ostringstream msg;
      msg << "response does not have the declared " << to_string(parity) << " parity";
      throw ValidationError(msg.str());
    }
    out.b_plus[static_cast<std::size_t>(mm - 1)] = (bp + sgn * bm) / (T(2) * split.a_zero);
  }
  if (parity == Parity::antisymmetric) {
    if (std::abs(x(k)) > T(1e-8) * scale)
      throw ValidationError("response does not have the declared anti parity");
    out.b_zero = T(0);
  } else {
    out.b_zero = x(k) / split.a_zero;
  }
  return out;
}

std::vector<double> impulse_response(const ThreePartIIR& f, int half) {
  if (half < 0) throw ValidationError("impulse_response: half-length must be non-negative");
  const int k = f.order();
  std::vector<double> g(static_cast<std::size_t>(half) + 1, 0.0);
  for (int nn = 1; nn <= half; ++nn) {
    double acc = nn <= static_cast<int>(f.b_plus.size()) ? f.b_plus[static_cast<std::size_t>(nn - 1)] : 0.0;
    for (int mm = 1; mm <= k && mm < nn; ++mm) acc -= f.a_plus[static_cast<std::size_t>(mm - 1)] * g[static_cast<std::size_t>(nn - mm)];
    g[static_cast<std::size_t>(nn)] = acc;
  }
  std::vector<double> h(2 * static_cast<std::size_t>(half) + 1);
  h[static_cast<std::size_t>(half)] = f.b_zero;
  const double s = f.sign();
  for (int mm = 1; mm <= half; ++mm) {
    h[static_cast<std::size_t>(half + mm)] = g[static_cast<std::size_t>(mm)];
    h[static_cast<std::size_t>(half - mm)] = s * g[static_cast<std::size_t>(mm)];
  }
  return h;
}

int impulse_extent(const ThreePartIIR& f, double rel, int cap) {
  if (!is_stable(f)) throw NumericalError("impulse_extent: filter is not stable");
  const int k = f.order();
  const int window = std::max(64, 8 * k);
  std::vector<double> g;
  g.reserve(1024);
  g.push_back(0.0);
  double peak = std::abs(f.b_zero);
  int last = 0;
  for (int nn = 1; nn <= cap; ++nn) {
    double acc = nn <= static_cast<int>(f.b_plus.size()) ? f.b_plus[static_cast<std::size_t>(nn - 1)] : 0.0;
    for (int mm = 1; mm <= k && mm < nn; ++mm) acc -= f.a_plus[static_cast<std::size_t>(mm - 1)] * g[static_cast<std::size_t>(nn - mm)];
    g.push_back(acc);
    peak = std::max(peak, std::abs(acc));
    if (std::abs(acc) >= rel * peak) last = nn;
    if (nn - last > window && nn > k) return last;
  }
  throw NumericalError("impulse response does not decay within the search limit");
}

template BasicThreePart<double> three_part_decompose(const BasicRationalTF<double>&,
                                                     const BasicDenominatorSplit<double>&, Parity);
template BasicThreePart<ext> three_part_decompose(const BasicRationalTF<ext>&,
                                                  const BasicDenominatorSplit<ext>&, Parity);

}  // namespace vmf
