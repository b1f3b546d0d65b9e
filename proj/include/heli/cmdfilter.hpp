#pragma once

namespace heli {

/// Fast finite-time command filter: a singularly perturbed second-order
/// differentiator with fractional-power correction,
///   x1c' = x2c
///   eps_c^2 x2c' = -a0 e - a1 sig(e)^gamma3 - b0 eps_c x2c - b1 sig(eps_c x2c)^gamma4
/// with e = x1c - input. x1c tracks the input, x2c its derivative; shrinking
/// eps_c tightens both.
struct FftcfParams {
  double eps_c = 0.01;  // perturbation parameter [s-scaled]
  double a0 = 5.0;
  double a1 = 0.5;
  double b0 = 2.0;
  double b1 = 0.5;
  double gamma3 = 0.5;
  double gamma4 = 0.5;
  bool operator==(const FftcfParams&) const = default;
};

struct FftcfState {
  double x1c = 0.0;  // filtered signal
  double x2c = 0.0;  // filtered derivative
};

// Accepts iff eps_c, a0, a1, b0, b1 > 0, gamma4 in (0, 1) and
// gamma3 in (gamma4 / (2 - gamma4), 1). Throws std::invalid_argument naming
// the violated bound; returns the validated parameters otherwise.
FftcfParams validate_fftcf_params(const FftcfParams&);

FftcfState fftcf_deriv(const FftcfState&, double input, const FftcfParams&);

// Conventional linear second-order filter (ablation baseline):
//   x1c' = x2c,  x2c' = -2 zeta omega_n x2c - omega_n^2 (x1c - input).
// Requires omega_n > 0, zeta > 0.
FftcfState linear_cf_deriv(const FftcfState&, double input, double omega_n, double zeta);

}  // namespace heli
