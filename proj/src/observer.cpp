#include "heli/observer.hpp"

#include <cmath>
#include <stdexcept>

#include "heli/numerics.hpp"

namespace heli {

namespace {

void leading_minors(const double a[3][3], double out[3]) {
  out[0] = a[0][0];
  out[1] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  out[2] = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
           - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
           + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

bool all_positive(const double m[3]) { return m[0] > 0.0 && m[1] > 0.0 && m[2] > 0.0; }

}  // namespace

std::vector<std::string> validate_asdo_gains(const AsdoGains& g, ObserverMode mode) {
  if (!(g.k1 > 0.0) || !(g.k2 > 0.0) || !(g.k3 > 0.0) || !(g.k4 > 0.0))
    throw std::invalid_argument("AsdoGains: k1..k4 must be positive");
  if (!(g.kappa > 0.0) || !(g.eps_d > 0.0) || !(g.Ld0 > 0.0))
    throw std::invalid_argument("AsdoGains: kappa, eps_d and Ld0 must be positive");

  std::vector<std::string> warnings;
  if (mode == ObserverMode::asosmo) {
    if (g.m != 2.0)
      throw std::invalid_argument("AsdoGains: asosmo mode requires m = 2");
  } else {
    if (!(g.m > 2.0))
      throw std::invalid_argument("AsdoGains: asdo mode requires m > 2");
    const GainConditionReport rep = verify_gain_condition(g);
    if (!rep.holds)
      warnings.push_back("observer gain condition violated, margin = " +
                         std::to_string(rep.margin));
    if (!rep.P_pd || !rep.Omega1_pd || !rep.Omega2_pd)
      warnings.push_back("observer stability matrices not all positive definite");
  }
  return warnings;
}

double asdo_output(const AsdoState& st, const AsdoGains& g, double x2_meas) {
  const double s_d = x2_meas - st.x_hat2;
  const double e1 = (g.m - 1.0) / g.m;
  const double L1d = g.k1 * std::pow(st.L_d, e1);
  const double L2d = g.k2 * st.L_d;
  return L1d * sig(s_d, e1) + L2d * s_d + st.phi_d;
}

AsdoState asdo_deriv(const AsdoState& st, const AsdoGains& g, double x2_meas,
                     double channel_drift, double d_hat) {
  const double s_d = x2_meas - st.x_hat2;
  const double L3d = g.k3 * std::pow(st.L_d, (2.0 * g.m - 2.0) / g.m);
  const double L4d = g.k4 * st.L_d * st.L_d;
  AsdoState dot;
  dot.x_hat2 = channel_drift + d_hat;
  dot.phi_d = L3d * sig(s_d, (g.m - 2.0) / g.m) + L4d * s_d;
  dot.L_d = std::abs(s_d) >= g.eps_d ? g.kappa : 0.0;
  return dot;
}

GainConditionReport verify_gain_condition(const AsdoGains& g) {
  if (!(g.m > 2.0))
    throw std::invalid_argument("verify_gain_condition: requires m > 2");

  const double m = g.m, k1 = g.k1, k2 = g.k2, k3 = g.k3, k4 = g.k4;
  GainConditionReport rep;
  rep.margin = m * m * k3 * k4
               - (m * m * m * k3 / (m - 1.0) + (4.0 * m * m - 4.0 * m + 1.0) * k1 * k1)
                 * k2 * k2;
  rep.holds = rep.margin > 0.0;

  const double P[3][3] = {
      {0.5 * (2.0 * m / (m - 1.0) * k3 + k1 * k1), 0.5 * k1 * k2, -0.5 * k1},
      {0.5 * k1 * k2, 0.5 * (2.0 * k4 + k2 * k2), -0.5 * k2},
      {-0.5 * k1, -0.5 * k2, 1.0}};
  const double c1 = k1 / m;
  const double Omega1[3][3] = {
      {c1 * (k3 * m + k1 * k1 * (m - 1.0)), 0.0, -c1 * k1 * (m - 1.0)},
      {0.0, c1 * (k4 * m + k2 * k2 * (3.0 * m - 1.0)), -c1 * k2 * (2.0 * m - 1.0)},
      {-c1 * k1 * (m - 1.0), -c1 * k2 * (2.0 * m - 1.0), c1 * (m - 1.0)}};
  const double Omega2[3][3] = {
      {k2 * (k3 + k1 * k1 * (3.0 * m - 2.0) / m), 0.0, 0.0},
      {0.0, k2 * (k4 + k2 * k2), -k2 * k2},
      {0.0, -k2 * k2, k2}};

  leading_minors(P, rep.P_minors);
  leading_minors(Omega1, rep.Omega1_minors);
  leading_minors(Omega2, rep.Omega2_minors);
  rep.P_pd = all_positive(rep.P_minors);
  rep.Omega1_pd = all_positive(rep.Omega1_minors);
  rep.Omega2_pd = all_positive(rep.Omega2_minors);
  return rep;
}

}  // namespace heli
