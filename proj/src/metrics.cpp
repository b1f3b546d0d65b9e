#include "heli/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heli {

SettleResult settle_time(const TimeSeries& ts, std::string_view column, double band,
                         double hold) {
  if (!(band > 0.0))
    throw std::invalid_argument("settle_time: band must be > 0");
  if (hold < 0.0)
    throw std::invalid_argument("settle_time: hold must be >= 0");
  const auto& t = ts.col("t");
  const auto& v = ts.col(column);
  if (v.empty()) return {};

  // walk back over the in-band tail
  std::size_t i = v.size();
  while (i > 0 && std::abs(v[i - 1]) <= band) --i;
  if (i == v.size()) return {};                 // never enters (or leaves again at the end)
  if (t.back() - t[i] < hold) return {};        // not enough in-band evidence
  return {true, t[i]};
}

double total_variation(const TimeSeries& ts, std::string_view column, double t_a, double t_b) {
  if (!(t_a < t_b))
    throw std::invalid_argument("total_variation: window [t_a, t_b) is empty");
  const auto& t = ts.col("t");
  const auto& v = ts.col(column);
  double acc = 0.0;
  bool any = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (t[i - 1] >= t_a && t[i] <= t_b) {
      acc += std::abs(v[i] - v[i - 1]);
      any = true;
    }
  }
  if (!any)
    throw std::invalid_argument("total_variation: window holds no sample pair");
  return acc;
}

double max_abs_after(const TimeSeries& ts, std::string_view column, double t0) {
  const auto& t = ts.col("t");
  const auto& v = ts.col(column);
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (t[i] > t0) best = std::max(best, std::abs(v[i]));
  if (best < 0.0)
    throw std::invalid_argument("max_abs_after: no samples after t0");
  return best;
}

double rmse(const TimeSeries& ts, std::string_view column) {
  const auto& v = ts.col(column);
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double saturation_fraction(const TimeSeries& ts) {
  const auto& v = ts.col("saturated");
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

MetricsReport compute_metrics(const TimeSeries& ts, double band, double hold) {
  MetricsReport r;
  r.band = band;
  r.hold = hold;
  r.rmse_z1 = rmse(ts, "z1_elev");
  r.rmse_z3 = rmse(ts, "z1_pitch");
  r.settle_z1 = settle_time(ts, "z1_elev", band, hold);
  r.settle_z3 = settle_time(ts, "z1_pitch", band, hold);
  r.saturation = saturation_fraction(ts);

  const auto& tt = ts.col("t");
  const double t_end = tt.empty() ? 0.0 : tt.back();
  r.transient_end = std::min(5.0, 0.5 * t_end);
  r.tv_window_a = r.transient_end;
  r.tv_window_b = t_end;

  const auto& d1 = ts.col("d1");
  const auto& d2 = ts.col("d2");
  const auto& h1 = ts.col("dhat_elev");
  const auto& h2 = ts.col("dhat_pitch");
  for (std::size_t i = 0; i < tt.size(); ++i) {
    if (tt[i] <= r.transient_end) continue;
    r.obs_err_elev = std::max(r.obs_err_elev, std::abs(d1[i] - h1[i]));
    r.obs_err_pitch = std::max(r.obs_err_pitch, std::abs(d2[i] - h2[i]));
  }
  if (r.tv_window_a < r.tv_window_b) {
    r.tv_Vf = total_variation(ts, "Vf", r.tv_window_a, r.tv_window_b);
    r.tv_Vb = total_variation(ts, "Vb", r.tv_window_a, r.tv_window_b);
  }
  return r;
}

std::string metrics_to_text(const MetricsReport& r) {
  std::ostringstream o;
  o.precision(6);
  o << "rmse_z1 = " << r.rmse_z1 << "\n";
  o << "rmse_z3 = " << r.rmse_z3 << "\n";
  o << "settle_band = " << r.band << "\n";
  o << "settle_hold = " << r.hold << "\n";
  o << "settle_z1 = " << (r.settle_z1.settled ? std::to_string(r.settle_z1.time) : "not-settled")
    << "\n";
  o << "settle_z3 = " << (r.settle_z3.settled ? std::to_string(r.settle_z3.time) : "not-settled")
    << "\n";
  o << "transient_end = " << r.transient_end << "\n";
  o << "obs_err_elev_max = " << r.obs_err_elev << "\n";
  o << "obs_err_pitch_max = " << r.obs_err_pitch << "\n";
  o << "tv_window = [" << r.tv_window_a << ", " << r.tv_window_b << "]\n";
  o << "tv_Vf = " << r.tv_Vf << "\n";
  o << "tv_Vb = " << r.tv_Vb << "\n";
  o << "saturation_fraction = " << r.saturation << "\n";
  return o.str();
}

}  // namespace heli
