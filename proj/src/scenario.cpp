#include "heli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heli {

double disturbance_eval(const DisturbanceProfile& dp, double t) {
  switch (dp.kind) {
    case DisturbanceKind::constant:
      return dp.amplitude;
    case DisturbanceKind::sinusoid:
      return dp.amplitude * std::sin(dp.frequency * t + dp.phase);
    case DisturbanceKind::tabulated: {
      if (dp.table.empty())
        throw std::domain_error("disturbance_eval: empty table");
      if (t < dp.table.front().first || t > dp.table.back().first)
        throw std::domain_error("disturbance_eval: t = " + std::to_string(t) +
                                " outside table range");
      const auto it = std::lower_bound(
          dp.table.begin(), dp.table.end(), t,
          [](const std::pair<double, double>& row, double tt) { return row.first < tt; });
      if (it == dp.table.begin()) return it->second;
      const auto prev = it - 1;
      const double span = it->first - prev->first;
      const double frac = (t - prev->first) / span;
      return prev->second + frac * (it->second - prev->second);
    }
  }
  throw std::logic_error("disturbance_eval: bad kind");
}

RefValue reference_eval(const ReferenceProfile& rp, double t) {
  const double a = rp.frequency * t;
  RefValue rv;
  if (rp.shape == RefShape::cosine) {
    rv.value = rp.offset + rp.amplitude * std::cos(a);
    rv.derivative = -rp.amplitude * rp.frequency * std::sin(a);
  } else {
    rv.value = rp.offset + rp.amplitude * std::sin(a);
    rv.derivative = rp.amplitude * rp.frequency * std::cos(a);
  }
  return rv;
}

namespace {

void validate_disturbance(const DisturbanceProfile& dp, const char* name, double duration) {
  if (dp.kind != DisturbanceKind::tabulated) return;
  if (dp.table.empty())
    throw std::invalid_argument(std::string(name) + ": tabulated profile needs entries");
  for (std::size_t i = 1; i < dp.table.size(); ++i)
    if (!(dp.table[i].first > dp.table[i - 1].first))
      throw std::invalid_argument(std::string(name) + ": table times must strictly increase");
  if (dp.table.front().first > 0.0 || dp.table.back().first < duration)
    throw std::invalid_argument(std::string(name) + ": table must cover [0, duration]");
}

void append_prefixed(std::vector<std::string>& out, const std::vector<std::string>& in,
                     const char* prefix) {
  for (const auto& w : in) out.push_back(std::string(prefix) + w);
}

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& sc) {
  validate_plant_params(sc.plant);
  if (!(sc.step > 0.0))
    throw std::invalid_argument("Scenario: step must be > 0");
  if (!(sc.duration >= sc.step))
    throw std::invalid_argument("Scenario: duration must be >= step");
  if (!std::isfinite(sc.init.x1) || !std::isfinite(sc.init.x2) ||
      !std::isfinite(sc.init.x3) || !std::isfinite(sc.init.x4))
    throw std::invalid_argument("Scenario: initial state must be finite");
  validate_disturbance(sc.d1, "d1", sc.duration);
  validate_disturbance(sc.d2, "d2", sc.duration);

  std::vector<std::string> warnings;
  append_prefixed(warnings, validate_asdo_gains(sc.elev.asdo, sc.elev.observer_mode), "elev: ");
  append_prefixed(warnings, validate_asdo_gains(sc.pitch.asdo, sc.pitch.observer_mode), "pitch: ");
  validate_fftcf_params(sc.elev.fftcf);
  validate_fftcf_params(sc.pitch.fftcf);
  append_prefixed(warnings, validate_ctrl_params(sc.elev.ctrl), "elev: ");
  append_prefixed(warnings, validate_ctrl_params(sc.pitch.ctrl), "pitch: ");
  return warnings;
}

TimeSeries::TimeSeries(std::vector<std::string> columns)
    : columns_(std::move(columns)), data_(columns_.size()) {}

bool TimeSeries::has_column(std::string_view name) const {
  for (const auto& c : columns_)
    if (c == name) return true;
  return false;
}

std::size_t TimeSeries::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return i;
  throw std::invalid_argument("TimeSeries: unknown column '" + std::string(name) + "'");
}

const std::vector<double>& TimeSeries::col(std::string_view name) const {
  return data_[column_index(name)];
}

std::vector<double>& TimeSeries::col(std::string_view name) {
  return data_[column_index(name)];
}

void TimeSeries::reserve(std::size_t n) {
  for (auto& c : data_) c.reserve(n);
}

void TimeSeries::push_row(const std::vector<double>& values) {
  if (values.size() != columns_.size())
    throw std::invalid_argument("TimeSeries: row size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) data_[i].push_back(values[i]);
}

const std::vector<std::string>& series_columns() {
  static const std::vector<std::string> cols = {
      "t",
      "x1", "x2", "x3", "x4",
      "ref_elev", "refdot_elev", "ref_pitch", "refdot_pitch",
      "z1_elev", "z2_elev", "z1_pitch", "z2_pitch",
      "d1", "d2", "dhat_elev", "dhat_pitch",
      "sd_elev", "sd_pitch", "Ld_elev", "Ld_pitch",
      "x1c_elev", "x2c_elev", "x1c_pitch", "x2c_pitch",
      "xi1_elev", "xi2_elev", "xi1_pitch", "xi2_pitch",
      "phat_elev", "phat_pitch",
      "u1", "u2", "Vf", "Vb",
      "saturated", "domain_violation"};
  return cols;
}

namespace {

struct ChannelRun {
  AsdoState obs;
  FftcfState filt;
  CtrlState ctrl;
};

struct SimState {
  PlantState plant;
  ChannelRun elev;
  ChannelRun pitch;
};

ChannelRun axpy(const ChannelRun& a, const ChannelRun& d, double h) {
  ChannelRun out;
  out.obs.x_hat2 = a.obs.x_hat2 + h * d.obs.x_hat2;
  out.obs.phi_d = a.obs.phi_d + h * d.obs.phi_d;
  out.obs.L_d = a.obs.L_d + h * d.obs.L_d;
  out.filt.x1c = a.filt.x1c + h * d.filt.x1c;
  out.filt.x2c = a.filt.x2c + h * d.filt.x2c;
  out.ctrl.xi1 = a.ctrl.xi1 + h * d.ctrl.xi1;
  out.ctrl.xi2 = a.ctrl.xi2 + h * d.ctrl.xi2;
  out.ctrl.p_hat = a.ctrl.p_hat + h * d.ctrl.p_hat;
  return out;
}

SimState axpy(const SimState& a, const SimState& d, double h) {
  SimState out;
  out.plant.x1 = a.plant.x1 + h * d.plant.x1;
  out.plant.x2 = a.plant.x2 + h * d.plant.x2;
  out.plant.x3 = a.plant.x3 + h * d.plant.x3;
  out.plant.x4 = a.plant.x4 + h * d.plant.x4;
  out.elev = axpy(a.elev, d.elev, h);
  out.pitch = axpy(a.pitch, d.pitch, h);
  return out;
}

// Control-layer outputs computed once per step and held across the step.
struct HeldSignals {
  double u1 = 0.0;
  double u2 = 0.0;
  double alpha_r_elev = 0.0;
  double alpha_r_pitch = 0.0;
  double d_hat_elev = 0.0;
  double d_hat_pitch = 0.0;
};

struct ChannelSignals {
  RefValue ref;
  TrackingErrors err;
  double alpha_r = 0.0;
  double d_hat = 0.0;
  double u = 0.0;  // controller force request, before saturation
};

ChannelSignals channel_signals(Channel which, double t, const SimState& s, const Scenario& sc) {
  const bool elev = which == Channel::elevation;
  const ChannelRun& run = elev ? s.elev : s.pitch;
  const ChannelConfig& cfg = elev ? sc.elev : sc.pitch;
  const double pos = elev ? s.plant.x1 : s.plant.x3;
  const double vel = elev ? s.plant.x2 : s.plant.x4;

  ChannelSignals out;
  out.ref = reference_eval(elev ? sc.ref1 : sc.ref3, t);
  out.err = tracking_errors(pos, vel, out.ref.value, run.filt.x1c, run.ctrl);
  out.alpha_r = virtual_law(out.err.z1, out.err.v1, out.ref.derivative, cfg.ctrl);
  out.d_hat = asdo_output(run.obs, cfg.asdo, vel);
  out.u = control_law(out.err.z1, out.err.z2, out.err.v2, run.filt.x2c, out.d_hat,
                      run.ctrl, elev ? ChannelModel::elevation() : ChannelModel::pitch(),
                      s.plant, sc.plant, cfg.ctrl);
  return out;
}

ChannelRun channel_deriv(Channel which, const SimState& s, const HeldSignals& held,
                         const Scenario& sc) {
  const bool elev = which == Channel::elevation;
  const ChannelRun& run = elev ? s.elev : s.pitch;
  const ChannelConfig& cfg = elev ? sc.elev : sc.pitch;
  const double vel = elev ? s.plant.x2 : s.plant.x4;
  const double u = elev ? held.u1 : held.u2;
  const double alpha_r = elev ? held.alpha_r_elev : held.alpha_r_pitch;
  const double d_hat = elev ? held.d_hat_elev : held.d_hat_pitch;
  const ChannelModel ch = elev ? ChannelModel::elevation() : ChannelModel::pitch();

  // known part of the channel acceleration under the held input
  const double drift = ch.control_gain(s.plant, sc.plant) * u + ch.drift(s.plant, sc.plant);

  ChannelRun dot;
  dot.obs = asdo_deriv(run.obs, cfg.asdo, vel, drift, d_hat);
  dot.filt = fftcf_deriv(run.filt, alpha_r, cfg.fftcf);
  const AuxDeriv aux = aux_deriv(run.ctrl, run.filt.x1c - alpha_r, cfg.ctrl);
  dot.ctrl.xi1 = aux.xi1_dot;
  dot.ctrl.xi2 = aux.xi2_dot;
  const double v2 = (vel - run.filt.x1c) - run.ctrl.xi2;
  dot.ctrl.p_hat = adaptive_law_deriv(run.ctrl.p_hat, v2, cfg.ctrl);
  return dot;
}

SimState loop_deriv(double t, const SimState& s, const HeldSignals& held, const Scenario& sc) {
  SimState dot;
  dot.plant = plant_deriv(s.plant, held.u1, held.u2,
                          disturbance_eval(sc.d1, t), disturbance_eval(sc.d2, t), sc.plant);
  dot.elev = channel_deriv(Channel::elevation, s, held, sc);
  dot.pitch = channel_deriv(Channel::pitch, s, held, sc);
  return dot;
}

SimState advance(double t, const SimState& s, double h, const HeldSignals& held,
                 const Scenario& sc) {
  SimState out;
  if (sc.integrator == Integrator::euler) {
    out = axpy(s, loop_deriv(t, s, held, sc), h);
  } else {
    const SimState k1 = loop_deriv(t, s, held, sc);
    const SimState k2 = loop_deriv(t + 0.5 * h, axpy(s, k1, 0.5 * h), held, sc);
    const SimState k3 = loop_deriv(t + 0.5 * h, axpy(s, k2, 0.5 * h), held, sc);
    const SimState k4 = loop_deriv(t + h, axpy(s, k3, h), held, sc);
    out = axpy(axpy(axpy(axpy(s, k1, h / 6.0), k2, h / 3.0), k3, h / 3.0), k4, h / 6.0);
  }
  // The continuous adaptive law cannot cross zero from above; discrete
  // overshoot of the leakage terms can, so project back.
  out.elev.ctrl.p_hat = std::max(0.0, out.elev.ctrl.p_hat);
  out.pitch.ctrl.p_hat = std::max(0.0, out.pitch.ctrl.p_hat);
  return out;
}

}  // namespace

TimeSeries simulate(const Scenario& sc) {
  TimeSeries ts(series_columns());
  ts.warnings = validate_scenario(sc);

  const long long n_steps = std::llround(sc.duration / sc.step);
  if (n_steps < 1)
    throw std::invalid_argument("simulate: duration shorter than one step");
  ts.reserve(static_cast<std::size_t>(n_steps) + 1);

  SimState s;
  s.plant = sc.init;
  s.elev.obs = AsdoState{sc.init.x2, 0.0, sc.elev.asdo.Ld0};
  s.pitch.obs = AsdoState{sc.init.x4, 0.0, sc.pitch.asdo.Ld0};
  // xi1 = xi2 = 0 and p_hat = 0 are the CtrlState defaults.

  // Filters start on the initial virtual-law value with zero rate, which
  // removes the artificial startup transient of an unmatched filter state.
  {
    const RefValue r1 = reference_eval(sc.ref1, 0.0);
    const double z1 = sc.init.x1 - r1.value;
    s.elev.filt = FftcfState{virtual_law(z1, z1 - s.elev.ctrl.xi1, r1.derivative, sc.elev.ctrl), 0.0};
    const RefValue r3 = reference_eval(sc.ref3, 0.0);
    const double z3 = sc.init.x3 - r3.value;
    s.pitch.filt = FftcfState{virtual_law(z3, z3 - s.pitch.ctrl.xi1, r3.derivative, sc.pitch.ctrl), 0.0};
  }

  std::vector<double> row(series_columns().size());
  bool domain_warned = false;

  for (long long k = 0;; ++k) {
    const double t = static_cast<double>(k) * sc.step;
    const ChannelSignals se = channel_signals(Channel::elevation, t, s, sc);
    const ChannelSignals sp = channel_signals(Channel::pitch, t, s, sc);
    const SaturationResult sat = saturate(voltages_from_u(se.u, sp.u, sc.plant), sc.plant);
    const double d1 = disturbance_eval(sc.d1, t);
    const double d2 = disturbance_eval(sc.d2, t);
    const bool domain_ok = in_operating_domain(s.plant);
    if (!domain_ok && !domain_warned) {
      ts.warnings.push_back("operating domain violated from t = " + std::to_string(t) +
                            " (cos(x3) < sqrt(2)/2)");
      domain_warned = true;
    }

    std::size_t i = 0;
    row[i++] = t;
    row[i++] = s.plant.x1;
    row[i++] = s.plant.x2;
    row[i++] = s.plant.x3;
    row[i++] = s.plant.x4;
    row[i++] = se.ref.value;
    row[i++] = se.ref.derivative;
    row[i++] = sp.ref.value;
    row[i++] = sp.ref.derivative;
    row[i++] = se.err.z1;
    row[i++] = se.err.z2;
    row[i++] = sp.err.z1;
    row[i++] = sp.err.z2;
    row[i++] = d1;
    row[i++] = d2;
    row[i++] = se.d_hat;
    row[i++] = sp.d_hat;
    row[i++] = s.plant.x2 - s.elev.obs.x_hat2;
    row[i++] = s.plant.x4 - s.pitch.obs.x_hat2;
    row[i++] = s.elev.obs.L_d;
    row[i++] = s.pitch.obs.L_d;
    row[i++] = s.elev.filt.x1c;
    row[i++] = s.elev.filt.x2c;
    row[i++] = s.pitch.filt.x1c;
    row[i++] = s.pitch.filt.x2c;
    row[i++] = s.elev.ctrl.xi1;
    row[i++] = s.elev.ctrl.xi2;
    row[i++] = s.pitch.ctrl.xi1;
    row[i++] = s.pitch.ctrl.xi2;
    row[i++] = s.elev.ctrl.p_hat;
    row[i++] = s.pitch.ctrl.p_hat;
    row[i++] = sat.u1;
    row[i++] = sat.u2;
    row[i++] = sat.v.V_f;
    row[i++] = sat.v.V_b;
    row[i++] = sat.saturated ? 1.0 : 0.0;
    row[i++] = domain_ok ? 0.0 : 1.0;

    for (double v : row)
      if (!std::isfinite(v))
        throw std::runtime_error("simulate: non-finite state at step " + std::to_string(k) +
                                 " (t = " + std::to_string(t) + ")");
    ts.push_row(row);

    if (k == n_steps) break;

    const HeldSignals held{sat.u1, sat.u2, se.alpha_r, sp.alpha_r, se.d_hat, sp.d_hat};
    s = advance(t, s, sc.step, held, sc);
  }
  return ts;
}

Scenario preset_case1(ObserverMode mode, DisturbanceKind kind) {
  Scenario sc;
  sc.duration = 20.0;
  // rk4 keeps the command filter free of the explicit-Euler limit cycle that
  // would otherwise dominate the input-smoothness comparison (see README).
  sc.integrator = Integrator::rk4;
  sc.elev.observer_mode = mode;
  sc.pitch.observer_mode = mode;
  if (mode == ObserverMode::asosmo) {
    sc.elev.asdo.m = 2.0;
    sc.pitch.asdo.m = 2.0;
  }
  DisturbanceProfile d;
  switch (kind) {
    case DisturbanceKind::constant:
      d.kind = DisturbanceKind::constant;
      d.amplitude = 1.0;
      break;
    case DisturbanceKind::sinusoid:
      d.kind = DisturbanceKind::sinusoid;
      d.amplitude = 1.0;
      d.frequency = 2.0;
      break;
    case DisturbanceKind::tabulated:
      throw std::invalid_argument("preset_case1: no tabulated preset");
  }
  sc.d1 = d;
  sc.d2 = d;
  return sc;
}

Scenario preset_case2() {
  return Scenario{};  // the scenario defaults are the tracking experiment
}

}  // namespace heli
