#pragma once

#include <string>
#include <string_view>

#include "heli/scenario.hpp"

namespace heli {

struct SettleResult {
  bool settled = false;
  double time = 0.0;  // meaningful only when settled
};

// Earliest t such that |signal| <= band for every later sample, with at least
// `hold` seconds of in-band evidence before the series ends. Not settled if
// the signal leaves the band again or too little tail remains.
SettleResult settle_time(const TimeSeries&, std::string_view column, double band, double hold);

// Sum of |x(i+1) - x(i)| over samples inside [t_a, t_b]. Throws on an empty
// window.
double total_variation(const TimeSeries&, std::string_view column, double t_a, double t_b);

// Max |signal| over samples with t > t0. Throws if no samples qualify.
double max_abs_after(const TimeSeries&, std::string_view column, double t0);

// Root mean square over the whole series.
double rmse(const TimeSeries&, std::string_view column);

// Fraction of samples with the saturation flag set.
double saturation_fraction(const TimeSeries&);

/// Standard post-processing summary of a run: tracking quality, settling,
/// observer accuracy after the transient, input smoothness, saturation.
struct MetricsReport {
  double band = 0.01;  // settling band [rad]
  double hold = 1.0;   // settling evidence interval [s]
  double rmse_z1 = 0.0;
  double rmse_z3 = 0.0;
  SettleResult settle_z1;
  SettleResult settle_z3;
  double transient_end = 5.0;  // start of the post-transient window [s]
  double obs_err_elev = 0.0;   // max |d1 - dhat_elev| after transient_end
  double obs_err_pitch = 0.0;  // max |d2 - dhat_pitch| after transient_end
  double tv_window_a = 5.0;
  double tv_window_b = 0.0;    // filled with the series end
  double tv_Vf = 0.0;
  double tv_Vb = 0.0;
  double saturation = 0.0;
};

MetricsReport compute_metrics(const TimeSeries&, double band = 0.01, double hold = 1.0);

std::string metrics_to_text(const MetricsReport&);

}  // namespace heli
