#pragma once

#include <string>
#include <vector>

namespace heli {

// asdo  : smooth observer, exponent parameter m > 2
// asosmo: adaptive second-order sliding-mode special case, m = 2
enum class ObserverMode { asdo, asosmo };

/// Observer constants for one control channel. The internal gains scale with
/// an adaptive factor L_d as
///   L1 = k1 L_d^{(m-1)/m},  L2 = k2 L_d,
///   L3 = k3 L_d^{(2m-2)/m}, L4 = k4 L_d^2,
/// and L_d grows at rate kappa while the innovation stays outside the
/// eps_d band, so the observer stiffens itself until sliding is established.
struct AsdoGains {
  double k1 = 2.0;
  double k2 = 2.5;
  double k3 = 4.0;
  double k4 = 30.0;
  double m = 3.0;       // fractional-exponent parameter
  double kappa = 20.0;  // adaptation rate of L_d [1/s]
  double eps_d = 0.01;  // innovation band: L_d grows while |s_d| >= eps_d
  double Ld0 = 1.0;     // initial adaptive gain
  bool operator==(const AsdoGains&) const = default;
};

// Throws std::invalid_argument on structural violations (non-positive
// constants, m <= 2 in asdo mode, m != 2 in asosmo mode). Returns warnings
// for soft violations (gain-condition margin <= 0, indefinite matrices).
std::vector<std::string> validate_asdo_gains(const AsdoGains&, ObserverMode);

/// Observer memory for one channel. L_d is nondecreasing along any
/// trajectory; s_d = x2_meas - x_hat2 and the disturbance estimate are
/// derived quantities, not stored.
struct AsdoState {
  double x_hat2 = 0.0;  // velocity estimate [rad/s]
  double phi_d = 0.0;   // integral correction [rad/s^2]
  double L_d = 1.0;     // adaptive gain
};

/// Disturbance estimate
///   d_hat = k1 L_d^{(m-1)/m} |s_d|^{(m-1)/m} sgn(s_d) + k2 L_d s_d + phi_d.
double asdo_output(const AsdoState&, const AsdoGains&, double x2_meas);

/// State derivative. channel_drift is the known part of the channel
/// acceleration (control effect plus gravity term), d_hat the current
/// observer output:
///   x_hat2' = channel_drift + d_hat
///   phi_d'  = k3 L_d^{(2m-2)/m} |s_d|^{(m-2)/m} sgn(s_d) + k4 L_d^2 s_d
///   L_d'    = kappa if |s_d| >= eps_d, else 0
/// At m = 2 the |s_d|^0 factor degenerates and the phi_d' correction becomes
/// a plain k3 L_d sgn(s_d) relay.
AsdoState asdo_deriv(const AsdoState&, const AsdoGains&, double x2_meas,
                     double channel_drift, double d_hat);

/// Result of the sufficient stability check for the m > 2 observer:
///   margin = m^2 k3 k4 - (m^3 k3/(m-1) + (4m^2 - 4m + 1) k1^2) k2^2,
/// holds iff margin > 0, plus positive definiteness of the three stability
/// matrices P, Omega1, Omega2 built from the gains (leading principal
/// minors, reported for inspection).
struct GainConditionReport {
  bool holds = false;
  double margin = 0.0;
  bool P_pd = false;
  bool Omega1_pd = false;
  bool Omega2_pd = false;
  double P_minors[3] = {0, 0, 0};
  double Omega1_minors[3] = {0, 0, 0};
  double Omega2_minors[3] = {0, 0, 0};
};

// Throws std::invalid_argument if m <= 2.
GainConditionReport verify_gain_condition(const AsdoGains&);

}  // namespace heli
