#pragma once

namespace heli {

// Physical constants of the 3-DOF helicopter bench. Defaults are the
// nominal bench values.
struct PlantParams {
  double J_alpha = 1.0348;  // elevation-axis inertia [kg m^2]
  double J_beta = 0.0451;   // pitch-axis inertia [kg m^2]
  double L_a = 0.66;        // elevation axis to body center [m]
  double L_h = 0.178;       // pitch axis to either motor [m]
  double m_e = 0.094;       // effective mass [kg]
  double g = 9.81;          // gravitational acceleration [m/s^2]
  double K_f = 0.1188;      // propeller force per volt [N/V]
  double V_max = 24.0;      // motor voltage limit [V]

  bool operator==(const PlantParams&) const = default;
};

void validate_plant_params(const PlantParams&);  // throws std::invalid_argument

// State [x1 x2 x3 x4] = [elevation angle, elevation rate, pitch angle, pitch rate].
struct PlantState {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;
  bool operator==(const PlantState&) const = default;
};

struct MotorVoltages {
  double V_f = 0.0;
  double V_b = 0.0;
};

// The model derivation assumes cos(x3) in [sqrt(2)/2, 1]. Excursions are
// flagged by the harness, never clamped.
bool in_operating_domain(const PlantState&);

// Continuous dynamics. u1 = thrust sum, u2 = thrust difference [N];
// d1, d2 = lumped disturbances [rad/s^2]. Returns the state derivative.
PlantState plant_deriv(const PlantState& s, double u1, double u2, double d1, double d2,
                       const PlantParams& p);

// Invert u1 = K_f (V_f + V_b), u2 = K_f (V_f - V_b).
MotorVoltages voltages_from_u(double u1, double u2, const PlantParams& p);

struct SaturationResult {
  MotorVoltages v;            // voltages clamped to [-V_max, V_max]
  double u1 = 0.0;            // effective inputs recomputed from clamped voltages
  double u2 = 0.0;
  bool saturated = false;     // true iff clamping occurred
};

SaturationResult saturate(const MotorVoltages& v, const PlantParams& p);

}  // namespace heli
