#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heli/cmdfilter.hpp"
#include "heli/controller.hpp"
#include "heli/observer.hpp"
#include "heli/plant.hpp"

namespace heli {

enum class DisturbanceKind { constant, sinusoid, tabulated };

struct DisturbanceProfile {
  DisturbanceKind kind = DisturbanceKind::constant;
  double amplitude = 0.0;
  double frequency = 0.0;  // sinusoid only [rad/s]
  double phase = 0.0;      // sinusoid only [rad]
  std::vector<std::pair<double, double>> table;  // tabulated: strictly increasing times

  bool operator==(const DisturbanceProfile&) const = default;
};

// constant -> amplitude; sinusoid -> amplitude*sin(frequency*t + phase);
// tabulated -> linear interpolation, throws std::domain_error outside the table.
double disturbance_eval(const DisturbanceProfile&, double t);

enum class RefShape { cosine, sine };

// offset + amplitude*{cos,sin}(frequency*t), with analytic derivative.
struct ReferenceProfile {
  double offset = 0.0;
  double amplitude = 0.0;
  double frequency = 0.0;  // [rad/s]
  RefShape shape = RefShape::cosine;

  bool operator==(const ReferenceProfile&) const = default;
};

struct RefValue {
  double value = 0.0;
  double derivative = 0.0;
};

RefValue reference_eval(const ReferenceProfile&, double t);

enum class Integrator { euler, rk4 };

struct ChannelConfig {
  ObserverMode observer_mode = ObserverMode::asdo;
  AsdoGains asdo;
  FftcfParams fftcf;
  CtrlParams ctrl;

  bool operator==(const ChannelConfig&) const = default;
};

namespace detail {
inline ChannelConfig default_pitch_config() {
  ChannelConfig c;
  c.ctrl.kbar1 = 3.0;
  c.ctrl.kbar2 = 5.0;
  c.ctrl.s1 = c.ctrl.s2 = 2.0;
  c.ctrl.l1 = c.ctrl.l2 = 2.0;
  return c;
}
}  // namespace detail

/// Full experiment description. Defaults reproduce the tracking experiment:
/// reference trajectories -0.2 cos(0.08 t) - 0.1 (elevation) and
/// 0.1 sin(0.06 t) (pitch), sinusoidal sin(2t) disturbances on both channels,
/// 1 ms step, 100 s horizon, explicit Euler.
struct Scenario {
  PlantParams plant;
  PlantState init{-2.0 * std::numbers::pi / 15.0, 0.0, 0.0, 0.0};
  ChannelConfig elev;
  ChannelConfig pitch = detail::default_pitch_config();
  DisturbanceProfile d1{DisturbanceKind::sinusoid, 1.0, 2.0, 0.0, {}};
  DisturbanceProfile d2{DisturbanceKind::sinusoid, 1.0, 2.0, 0.0, {}};
  ReferenceProfile ref1{-0.1, -0.2, 0.08, RefShape::cosine};
  ReferenceProfile ref3{0.0, 0.1, 0.06, RefShape::sine};
  double step = 1e-3;      // [s]
  double duration = 100.0; // [s]
  Integrator integrator = Integrator::euler;

  bool operator==(const Scenario&) const = default;
};

// Throws std::invalid_argument on structural errors, returns soft warnings
// (convergence-rate conditions, gain-condition margin) prefixed per channel.
std::vector<std::string> validate_scenario(const Scenario&);

/// Column-oriented record of one simulation run: a uniform time grid with one
/// named column per logged quantity. Flags are stored as 0/1.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<std::string> columns);

  std::size_t rows() const { return data_.empty() ? 0 : data_.front().size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  bool has_column(std::string_view name) const;
  std::size_t column_index(std::string_view name) const;  // throws on unknown column
  const std::vector<double>& col(std::string_view name) const;
  std::vector<double>& col(std::string_view name);

  void reserve(std::size_t n);
  void push_row(const std::vector<double>& values);  // size must match columns

  std::vector<std::string> warnings;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> data_;
};

// The fixed column set produced by simulate().
const std::vector<std::string>& series_columns();

/// Run the closed loop over the scenario's time grid. Each step evaluates
/// references and disturbances, forms tracking errors, the virtual law, the
/// observer output and the control forces, saturates the motor voltages, then
/// advances plant, observer, filter, auxiliary and adaptive states one step
/// with the chosen integrator under zero-order-held inputs. Deterministic:
/// equal scenarios produce identical series. Throws std::runtime_error with
/// the step index if a state goes non-finite.
TimeSeries simulate(const Scenario&);

// Observer-comparison experiment: requested observer on both channels,
// constant (d = 1) or sinusoidal (d = sin 2t) disturbance, 20 s horizon,
// rk4 stepping (see README on integrator choice for smoothness studies).
Scenario preset_case1(ObserverMode mode, DisturbanceKind kind);

// Tracking experiment: smooth observer, d1 = d2 = sin(2t), 100 s horizon,
// Euler stepping.
Scenario preset_case2();

}  // namespace heli
