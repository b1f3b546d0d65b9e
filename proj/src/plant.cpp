#include "heli/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heli {

void validate_plant_params(const PlantParams& p) {
  if (!(p.J_alpha > 0.0) || !(p.J_beta > 0.0) || !(p.L_a > 0.0) || !(p.L_h > 0.0) ||
      !(p.m_e > 0.0) || !(p.g > 0.0) || !(p.K_f > 0.0) || !(p.V_max > 0.0))
    throw std::invalid_argument("PlantParams: all parameters must be strictly positive");
}

bool in_operating_domain(const PlantState& s) {
  return std::cos(s.x3) >= std::sqrt(2.0) / 2.0;
}

PlantState plant_deriv(const PlantState& s, double u1, double u2, double d1, double d2,
                       const PlantParams& p) {
  PlantState dot;
  dot.x1 = s.x2;
  dot.x2 = p.L_a / p.J_alpha * std::cos(s.x3) * u1
           - p.g / p.J_alpha * p.m_e * p.L_a * std::cos(s.x1) + d1;
  dot.x3 = s.x4;
  dot.x4 = p.L_h / p.J_beta * u2 + d2;
  return dot;
}

MotorVoltages voltages_from_u(double u1, double u2, const PlantParams& p) {
  return {(u1 + u2) / (2.0 * p.K_f), (u1 - u2) / (2.0 * p.K_f)};
}

SaturationResult saturate(const MotorVoltages& v, const PlantParams& p) {
  SaturationResult r;
  r.v.V_f = std::clamp(v.V_f, -p.V_max, p.V_max);
  r.v.V_b = std::clamp(v.V_b, -p.V_max, p.V_max);
  r.saturated = r.v.V_f != v.V_f || r.v.V_b != v.V_b;
  r.u1 = p.K_f * (r.v.V_f + r.v.V_b);
  r.u2 = p.K_f * (r.v.V_f - r.v.V_b);
  return r;
}

}  // namespace heli
