#include "heli/controller.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace heli {

std::vector<std::string> validate_ctrl_params(const CtrlParams& p) {
  const auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("CtrlParams: ") + name + " must be > 0");
  };
  require_positive(p.kbar1, "kbar1");
  require_positive(p.kbar2, "kbar2");
  require_positive(p.s1, "s1");
  require_positive(p.s2, "s2");
  require_positive(p.l1, "l1");
  require_positive(p.l2, "l2");
  require_positive(p.eps_r, "eps_r");
  require_positive(p.sigma_r, "sigma_r");
  require_positive(p.eps_p, "eps_p");
  require_positive(p.sigma_p, "sigma_p");
  require_positive(p.q, "q");
  require_positive(p.mu, "mu");
  require_positive(p.eta, "eta");
  p.r.validate();
  if (p.r.num >= p.r.den)
    throw std::invalid_argument("CtrlParams: exponent r must be < 1");

  std::vector<std::string> warnings;
  const double r = p.r.value();
  if (!(2.0 * p.kbar1 - 1.0 > 0.0))
    warnings.push_back("rate condition 2*kbar1 - 1 > 0 violated (kbar1 = " +
                       std::to_string(p.kbar1) + ")");
  if (!(p.s1 - p.l1 / (1.0 + r) > 0.0))
    warnings.push_back("rate condition s1 > l1/(1+r) violated (s1 = " + std::to_string(p.s1) +
                       ", l1/(1+r) = " + std::to_string(p.l1 / (1.0 + r)) + ")");
  if (!(p.s2 - p.l2 / (1.0 + r) > 0.0))
    warnings.push_back("rate condition s2 > l2/(1+r) violated (s2 = " + std::to_string(p.s2) +
                       ", l2/(1+r) = " + std::to_string(p.l2 / (1.0 + r)) + ")");
  return warnings;
}

double ChannelModel::control_gain(const PlantState& s, const PlantParams& p) const {
  return channel == Channel::elevation ? p.L_a / p.J_alpha * std::cos(s.x3)
                                       : p.L_h / p.J_beta;
}

double ChannelModel::drift(const PlantState& s, const PlantParams& p) const {
  return channel == Channel::elevation
             ? -p.g / p.J_alpha * p.m_e * p.L_a * std::cos(s.x1)
             : 0.0;
}

TrackingErrors tracking_errors(double x_pos, double x_vel, double x_ref, double x1c,
                               const CtrlState& st) {
  TrackingErrors e;
  e.z1 = x_pos - x_ref;
  e.z2 = x_vel - x1c;
  e.v1 = e.z1 - st.xi1;
  e.v2 = e.z2 - st.xi2;
  return e;
}

double virtual_law(double z1, double v1, double x_ref_dot, const CtrlParams& p) {
  const double r = p.r.value();
  const double w = std::pow(std::abs(v1), 2.0 + 2.0 * r);
  return -p.kbar1 * z1 + x_ref_dot
         - p.s1 * sig(v1, 1.0 + 2.0 * r) * smooth_abs_factor(w, p.eps_r, p.sigma_r);
}

double control_law(double z1, double z2, double v2, double x2c, double d_hat,
                   const CtrlState& st, const ChannelModel& ch, const PlantState& ps,
                   const PlantParams& pp, const CtrlParams& p) {
  const double gain = ch.control_gain(ps, pp);
  if (std::abs(gain) < 1e-9)
    throw std::domain_error("control_law: channel control gain vanished");
  const double compensation =
      st.p_hat * v2 * smooth_abs_factor(v2 * v2, p.eps_p, p.sigma_p);
  return (-p.kbar2 * z2 - z1 + x2c - ch.drift(ps, pp) - p.s2 * sig(v2, p.r.value())
          - d_hat - compensation) / gain;
}

AuxDeriv aux_deriv(const CtrlState& st, double filter_error, const CtrlParams& p) {
  const double r = p.r.value();
  AuxDeriv dot;
  dot.xi1_dot = -p.kbar1 * st.xi1 + st.xi2 + filter_error - p.l1 * sig(st.xi1, r);
  dot.xi2_dot = -p.kbar2 * st.xi2 - st.xi1 - p.l2 * sig(st.xi2, r);
  return dot;
}

double adaptive_law_deriv(double p_hat, double v2, const CtrlParams& p) {
  return p.q * (v2 * v2 * smooth_abs_factor(v2 * v2, p.eps_p, p.sigma_p)
                - p.mu * p_hat - p.eta * sig(p_hat, p.r.value()));
}

}  // namespace heli
