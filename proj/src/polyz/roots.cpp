#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "vmf/error.hpp"
#include "vmf/three_part.hpp"

namespace vmf {

namespace {

template <class T>
std::complex<T> horner(const std::vector<T>& asc, std::complex<T> z, std::complex<T>* deriv) {
  std::complex<T> p(0), dp(0);
  for (std::size_t j = asc.size(); j-- > 0;) {
    dp = dp * z + p;
    p = p * z + std::complex<T>(asc[j]);
  }
  if (deriv) *deriv = dp;
  return p;
}

// Multiple roots come back from the eigensolver as a small cloud; the cloud's
// centroid is far more accurate than any member, so we replace members by it.
template <class T>
void merge_clusters(std::vector<std::complex<T>>& roots, T radius) {
  std::vector<int> group(roots.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (group[i] >= 0) continue;
    group[i] = next;
    // transitive closure
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (group[j] >= 0) continue;
        for (std::size_t k = 0; k < roots.size(); ++k) {
          if (group[k] != next) continue;
          if (std::abs(roots[j] - roots[k]) < radius * std::max(T(1), std::abs(roots[k]))) {
            group[j] = next;
            grew = true;
            break;
          }
        }
      }
    }
    ++next;
  }
  for (int g = 0; g < next; ++g) {
    std::complex<T> mean(0);
    int n = 0;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (group[i] == g) {
        mean += roots[i];
        ++n;
      }
    if (n < 2) continue;
    mean /= T(n);
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (group[i] == g) roots[i] = mean;
  }
}

// Companion-matrix eigenvalues, optionally with multiple-root clusters merged.
template <class T>
std::vector<std::complex<T>> roots_impl(const std::vector<T>& ascending, bool merge) {
  std::vector<T> c(ascending);
  while (!c.empty() && c.back() == T(0)) c.pop_back();
  if (c.size() <= 1) return {};
  std::vector<std::complex<T>> roots;
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == T(0)) ++zeros;
  roots.assign(zeros, std::complex<T>(0));
  std::vector<T> p(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
  const int n = static_cast<int>(p.size()) - 1;
  if (n == 0) return roots;

  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  Mat comp = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = T(1);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  Eigen::EigenSolver<Mat> es(comp, false);
  if (es.info() != Eigen::Success) throw NumericalError("companion eigenvalue iteration did not converge");
  std::vector<std::complex<T>> found;
  for (int i = 0; i < n; ++i) found.push_back(es.eigenvalues()(i));

  // Without merging, return the raw eigenvalues: their symmetric functions
  // stay accurate even where individual roots of a cluster are not.
  if (!merge) {
    roots.insert(roots.end(), found.begin(), found.end());
    return roots;
  }
  // Newton polishing; skipped for members of a cluster (multiple roots).
  merge_clusters(found, T(1e-4));
  for (auto& r : found) {
    int mult = 0;
    for (const auto& s : found) mult += (std::abs(s - r) < T(1e-4) * std::max(T(1), std::abs(r))) ? 1 : 0;
    if (mult > 1) continue;
    for (int it = 0; it < 8; ++it) {
      std::complex<T> d;
      const std::complex<T> v = horner(p, r, &d);
      if (std::abs(d) == T(0)) break;
      const std::complex<T> step = v / d;
      r -= step;
      if (std::abs(step) <= std::numeric_limits<T>::epsilon() * std::max(T(1), std::abs(r))) break;
    }
  }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

// Fills a_plus / a_zero from the poles and returns the largest coefficient
// mismatch of a_zero A+ A- against den, relative to den's scale.
template <class T>
double fill_split(const BasicLaurentPoly<T>& d, BasicDenominatorSplit<T>& out) {
  out.a_plus = poly_from_roots(out.poles);
  const auto ap = BasicLaurentPoly<T>::from_causal(out.a_plus);
  const auto prod = ap * ap.reflected();
  // Normalize on the largest coefficient; the central one may be tiny.
  int best = 0;
  for (int j = -d.half_order(); j <= d.half_order(); ++j)
    if (std::abs(d[j]) > std::abs(d[best])) best = j;
  if (prod[best] == T(0)) return std::numeric_limits<double>::infinity();
  out.a_zero = d[best] / prod[best];
  const auto back = prod * out.a_zero;
  const int k = std::max(back.half_order(), d.half_order());
  double worst = 0.0;
  for (int j = -k; j <= k; ++j) worst = std::max(worst, static_cast<double>(std::abs(back[j] - d[j])));
  return worst / d.scale();
}

}  // namespace

template <class T>
std::vector<std::complex<T>> polynomial_roots(const std::vector<T>& ascending) {
  return roots_impl(ascending, true);
}

template <class T>
std::vector<T> poly_from_roots(const std::vector<std::complex<T>>& roots) {
  std::vector<std::complex<T>> acc{std::complex<T>(1)};
  for (const auto& r : roots) {
    std::vector<std::complex<T>> next(acc.size() + 1, std::complex<T>(0));
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j] += acc[j];
      next[j + 1] -= r * acc[j];
    }
    acc.swap(next);
  }
  std::vector<T> out(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) out[j] = acc[j].real();
  return out;
}

template <class T>
BasicDenominatorSplit<T> split_from_poles(const BasicLaurentPoly<T>& den,
                                          const std::vector<std::complex<T>>& poles) {
  const BasicLaurentPoly<T> d = den.trimmed();
  BasicDenominatorSplit<T> out;
  out.poles = poles;
  const double err = fill_split(d, out);
  if (!(err <= 1e-9)) {
    std::ostringstream msg;
    msg << "denominator split does not reproduce the denominator (relative mismatch " << err << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

template <class T>
BasicDenominatorSplit<T> split_denominator(const BasicLaurentPoly<T>& den) {
  const BasicLaurentPoly<T> d = den.trimmed();
  const int k = d.half_order();
  if (k == 0) {
    if (d[0] == T(0)) throw NumericalError("denominator is identically zero");
    BasicDenominatorSplit<T> out;
    out.a_plus = {T(1)};
    out.a_zero = d[0];
    return out;
  }
  // z^K den(z) is an ordinary polynomial of degree 2K, ascending in z; roots
  // are found in extended precision. Merged clusters suit exact multiple roots,
  // raw eigenvalues suit coefficients that were rounded after design; keep
  // whichever reproduces the denominator better.
  std::vector<ext> cx(d.coeffs().begin(), d.coeffs().end());
  BasicDenominatorSplit<T> best;
  double best_err = std::numeric_limits<double>::infinity();
  std::string reason;
  for (bool merge : {true, false}) {
    const auto roots = roots_impl(cx, merge);
    if (static_cast<int>(roots.size()) != 2 * k) {
      reason = "denominator has roots at z = 0 or infinity; it is not symmetric";
      continue;
    }
    BasicDenominatorSplit<T> cand;
    bool ok = true;
    for (const auto& r : roots) {
      const ext mag = std::abs(r);
      if (std::abs(mag - 1.0L) < 1e-9L) {
        std::ostringstream msg;
        msg << "marginally stable: denominator root at |z|=" << static_cast<double>(mag);
        throw NumericalError(msg.str());
      }
      if (mag < 1.0L) cand.poles.push_back(std::complex<T>(static_cast<T>(r.real()), static_cast<T>(r.imag())));
    }
    if (static_cast<int>(cand.poles.size()) != k) {
      std::ostringstream msg;
      msg << "asymmetric denominator: " << cand.poles.size() << " of " << 2 * k << " roots inside the unit circle";
      reason = msg.str();
      ok = false;
    }
    if (!ok) continue;
    const double err = fill_split(d, cand);
    if (err < best_err) {
      best_err = err;
      best = cand;
    }
  }
  if (best_err == std::numeric_limits<double>::infinity()) throw NumericalError(reason);
  if (!(best_err <= 1e-9)) {
    std::ostringstream msg;
    msg << "denominator split does not reproduce the denominator (relative mismatch " << best_err << ")";
    throw NumericalError(msg.str());
  }
  return best;
}

bool is_stable(const ThreePartIIR& f) {
  if (f.a_plus.empty()) return true;
  // z^K A+(z) = z^K + a1 z^{K-1} + ... + aK
  std::vector<double> asc(f.a_plus.rbegin(), f.a_plus.rend());
  asc.push_back(1.0);
  std::vector<ext> ax(asc.begin(), asc.end());
  for (const auto& r : polynomial_roots(ax))
    if (!(std::abs(r) < 1.0L)) return false;
  return true;
}

template std::vector<std::complex<double>> polynomial_roots(const std::vector<double>&);
template std::vector<std::complex<ext>> polynomial_roots(const std::vector<ext>&);
template std::vector<double> poly_from_roots(const std::vector<std::complex<double>>&);
template std::vector<ext> poly_from_roots(const std::vector<std::complex<ext>>&);
template BasicDenominatorSplit<double> split_denominator(const BasicLaurentPoly<double>&);
template BasicDenominatorSplit<ext> split_denominator(const BasicLaurentPoly<ext>&);
template BasicDenominatorSplit<double> split_from_poles(const BasicLaurentPoly<double>&,
                                                        const std::vector<std::complex<double>>&);
template BasicDenominatorSplit<ext> split_from_poles(const BasicLaurentPoly<ext>&,
                                                     const std::vector<std::complex<ext>>&);

}  // namespace vmf
