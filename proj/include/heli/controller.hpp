#pragma once

#include <string>
#include <vector>

#include "heli/numerics.hpp"
#include "heli/plant.hpp"

namespace heli {

struct CtrlParams {
  double kbar1 = 1.0;       // backstepping gains
  double kbar2 = 2.0;
  double s1 = 0.5;          // finite-time gains
  double s2 = 0.5;
  OddRatioExponent r{3, 5};  // fractional exponent, must stay < 1
  double l1 = 1.0;          // auxiliary-system gains
  double l2 = 1.0;
  double eps_r = 0.1;       // virtual-law smoothing constants
  double sigma_r = 0.1;
  double eps_p = 0.1;       // adaptive-law smoothing constants
  double sigma_p = 0.1;
  double q = 30.0;          // adaptation gain
  double mu = 0.1;          // sigma-modification linear leakage
  double eta = 1.0;         // sigma-modification fractional leakage
  bool operator==(const CtrlParams&) const = default;
};

// Throws std::invalid_argument on structural violations (non-positive gains,
// invalid or >= 1 exponent). The convergence-rate conditions 2*kbar1 - 1 > 0
// and s_i - l_i/(1+r) > 0 are reported as warnings when violated, not
// rejected: the reference gain set for the elevation channel violates the
// second one and must still run.
std::vector<std::string> validate_ctrl_params(const CtrlParams&);

/// Per-channel controller memory. xi1/xi2 absorb the command-filter
/// approximation error and must start at zero; p_hat estimates the bound of
/// the observer approximation error and stays nonnegative.
struct CtrlState {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double p_hat = 0.0;
};

enum class Channel { elevation, pitch };

// Acceleration model of one channel: accel = control_gain * u + drift + d.
// Elevation: gain (L_a/J_alpha) cos(x3), gravity drift; pitch: constant gain
// L_h/J_beta, zero drift. The elevation gain stays >= (L_a/J_alpha)*sqrt(2)/2
// inside the operating domain.
struct ChannelModel {
  Channel channel = Channel::elevation;

  double control_gain(const PlantState&, const PlantParams&) const;
  double drift(const PlantState&, const PlantParams&) const;

  static ChannelModel elevation() { return {Channel::elevation}; }
  static ChannelModel pitch() { return {Channel::pitch}; }
};

struct TrackingErrors {
  double z1 = 0.0;  // position error x_pos - x_ref
  double z2 = 0.0;  // velocity error x_vel - x1c
  double v1 = 0.0;  // compensated: z1 - xi1
  double v2 = 0.0;  // compensated: z2 - xi2
};

TrackingErrors tracking_errors(double x_pos, double x_vel, double x_ref, double x1c,
                               const CtrlState&);

/// Singularity-free virtual velocity command
///   alpha_r = -kbar1 z1 + x_ref_dot
///             - s1 sig(v1)^{1+2r} f(|v1|^{2+2r}, eps_r, sigma_r)
/// finite for every v1 including v1 = 0.
double virtual_law(double z1, double v1, double x_ref_dot, const CtrlParams&);

/// Channel control force [N]
///   u = ( -kbar2 z2 - z1 + x2c - drift - s2 sig(v2)^r - d_hat
///         - p_hat v2 f(v2^2, eps_p, sigma_p) ) / control_gain
/// where x2c is the filter derivative state (no numerical differentiation
/// anywhere). Throws std::domain_error if |control_gain| < 1e-9.
double control_law(double z1, double z2, double v2, double x2c, double d_hat,
                   const CtrlState&, const ChannelModel&, const PlantState&,
                   const PlantParams&, const CtrlParams&);

struct AuxDeriv {
  double xi1_dot = 0.0;
  double xi2_dot = 0.0;
};

/// Auxiliary compensation dynamics, driven by filter_error = x1c - alpha_r:
///   xi1' = -kbar1 xi1 + xi2 + filter_error - l1 sig(xi1)^r
///   xi2' = -kbar2 xi2 - xi1 - l2 sig(xi2)^r
AuxDeriv aux_deriv(const CtrlState&, double filter_error, const CtrlParams&);

/// Adaptive law with sigma-modification leakage:
///   p_hat' = q [ v2^2 f(v2^2, eps_p, sigma_p) - mu p_hat - eta sig(p_hat)^r ]
double adaptive_law_deriv(double p_hat, double v2, const CtrlParams&);

}  // namespace heli
