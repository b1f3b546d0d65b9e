#pragma once

namespace heli {

// Sign of x as -1, 0 or +1.
inline double sgn(double x) { return static_cast<double>(x > 0.0) - (x < 0.0); }

/// Sign-preserving power: sig(x, gamma) = |x|^gamma * sgn(x).
/// Odd in x, monotone nondecreasing, continuous at 0 for gamma > 0.
/// At gamma == 0 it degenerates to sgn(x), which is what the m = 2
/// sliding-mode observer variant relies on.
double sig(double x, double gamma);

/// Smooth-magnitude factor
///   f(w, eps, sigma) = sqrt((w + sigma^2 + eps^2) / ((w + eps^2)(w + sigma^2)))
/// intended for w = x^2 (callers may pass any even power of a signal).
/// x^2 * f(x^2, eps, sigma) approximates |x| from below, stays finite for
/// every w >= 0, and its derivative never blows up at x = 0; this is what
/// removes the singularity from fractional-power feedback terms.
double smooth_abs_factor(double w, double eps, double sigma);

/// The approximation gap |x| - x^2 * smooth_abs_factor(x^2, eps, sigma),
/// which lies in [0, smooth_abs_gap_bound(eps, sigma)) for every real x.
/// Evaluated through the algebraically identical cancellation-free form
///   |x| * eps^2 sigma^2 / (D * (1 + sqrt(w N / D))),
/// with N = w + sigma^2 + eps^2 and D = (w + eps^2)(w + sigma^2); the direct
/// difference loses every significant digit once |x| >> eps, sigma.
double smooth_abs_gap(double x, double eps, double sigma);

/// Supremum of the gap: eps * sigma / sqrt(eps^2 + sigma^2).
double smooth_abs_gap_bound(double eps, double sigma);

/// Exponent r = num/den with num and den positive odd integers, so that x^r
/// evaluated through sig() is an odd real function. The controller uses
/// r < 1 together with the derived exponents 1 + 2r and 2 + 2r.
struct OddRatioExponent {
  int num = 3;
  int den = 5;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  void validate() const;  // throws std::invalid_argument
  bool operator==(const OddRatioExponent&) const = default;
};

}  // namespace heli
