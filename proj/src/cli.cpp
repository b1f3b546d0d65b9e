#include "heli/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "heli/io.hpp"
#include "heli/metrics.hpp"
#include "heli/scenario.hpp"

namespace heli {

namespace {

namespace fs = std::filesystem;

struct RunFlags {
  std::string out = "out";
  double step = -1.0;      // <= 0 keeps the scenario value
  double duration = -1.0;
  std::string integrator;  // empty keeps the scenario value
  std::vector<std::string> overrides;
  double band = 0.01;
  double hold = 1.0;
};

void add_run_flags(CLI::App* cmd, RunFlags& rf) {
  cmd->add_option("-o,--out", rf.out, "output directory");
  cmd->add_option("--step", rf.step, "integration step [s]");
  cmd->add_option("--duration", rf.duration, "simulation horizon [s]");
  cmd->add_option("--integrator", rf.integrator, "euler or rk4")
      ->check(CLI::IsMember({"euler", "rk4"}));
  cmd->add_option("--set", rf.overrides, "scenario override key=value (repeatable)");
  cmd->add_option("--band", rf.band, "settling band for the metrics report [rad]");
  cmd->add_option("--hold", rf.hold, "settling hold for the metrics report [s]");
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

void apply_flags(Scenario& sc, const RunFlags& rf) {
  if (rf.step > 0.0) sc.step = rf.step;
  if (rf.duration > 0.0) sc.duration = rf.duration;
  if (!rf.integrator.empty()) apply_scenario_key(sc, "sim.integrator", rf.integrator);
  for (const auto& kv : rf.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    apply_scenario_key(sc, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
}

// Runs the scenario and writes the standard artifact set:
// manifest.cfg (fully resolved scenario), series.csv, metrics.txt, plots/*.dat.
MetricsReport run_and_export(const Scenario& sc, const RunFlags& rf,
                             const std::string& out_dir, TimeSeries* series_out = nullptr) {
  fs::create_directories(fs::path(out_dir) / "plots");
  write_scenario(sc, (fs::path(out_dir) / "manifest.cfg").string());

  TimeSeries ts = simulate(sc);
  for (const auto& w : ts.warnings) std::cerr << "warning: " << w << "\n";

  write_csv(ts, (fs::path(out_dir) / "series.csv").string());
  const MetricsReport rep = compute_metrics(ts, rf.band, rf.hold);
  {
    std::ofstream f(fs::path(out_dir) / "metrics.txt");
    f << metrics_to_text(rep);
  }
  const fs::path plots = fs::path(out_dir) / "plots";
  emit_plot_data(ts, {"t", "d1", "dhat_elev"}, (plots / "disturbance_elev.dat").string());
  emit_plot_data(ts, {"t", "d2", "dhat_pitch"}, (plots / "disturbance_pitch.dat").string());
  emit_plot_data(ts, {"t", "Vf", "Vb"}, (plots / "inputs.dat").string());
  emit_plot_data(ts, {"t", "x1", "ref_elev", "z1_elev"}, (plots / "tracking_elev.dat").string());
  emit_plot_data(ts, {"t", "x3", "ref_pitch", "z1_pitch"}, (plots / "tracking_pitch.dat").string());

  std::cout << "wrote " << out_dir << "\n";
  if (series_out) *series_out = std::move(ts);
  return rep;
}

DisturbanceKind kind_from_word(const std::string& w) {
  if (w == "constant") return DisturbanceKind::constant;
  if (w == "sinusoid") return DisturbanceKind::sinusoid;
  throw std::invalid_argument("disturbance must be constant or sinusoid, got '" + w + "'");
}

int do_verify_gains(const AsdoGains& gains) {
  const GainConditionReport rep = verify_gain_condition(gains);
  std::cout << "gain condition margin = " << rep.margin << " ("
            << (rep.holds ? "holds" : "violated") << ")\n";
  const auto show = [](const char* name, bool pd, const double m[3]) {
    std::cout << name << " positive definite: " << (pd ? "yes" : "no") << " (minors "
              << m[0] << ", " << m[1] << ", " << m[2] << ")\n";
  };
  show("P", rep.P_pd, rep.P_minors);
  show("Omega1", rep.Omega1_pd, rep.Omega1_minors);
  show("Omega2", rep.Omega2_pd, rep.Omega2_minors);
  const bool ok = rep.holds && rep.P_pd && rep.Omega1_pd && rep.Omega2_pd;
  std::cout << (ok ? "all checks passed" : "checks FAILED") << "\n";
  return ok ? 0 : 1;
}

int do_compare(const std::string& disturbance, const RunFlags& rf) {
  const DisturbanceKind kind = kind_from_word(disturbance);
  Scenario sc_asdo = preset_case1(ObserverMode::asdo, kind);
  Scenario sc_asosmo = preset_case1(ObserverMode::asosmo, kind);
  apply_flags(sc_asdo, rf);
  apply_flags(sc_asosmo, rf);

  TimeSeries ts_asdo, ts_asosmo;
  const MetricsReport rep_a = run_and_export(sc_asdo, rf, rf.out + "/asdo", &ts_asdo);
  const MetricsReport rep_s = run_and_export(sc_asosmo, rf, rf.out + "/asosmo", &ts_asosmo);

  TimeSeries merged(std::vector<std::string>{"t", "d1", "dhat_asdo", "dhat_asosmo"});
  const auto& t = ts_asdo.col("t");
  const auto& d1 = ts_asdo.col("d1");
  const auto& ha = ts_asdo.col("dhat_elev");
  const auto& hs = ts_asosmo.col("dhat_elev");
  const std::size_t n = std::min(ts_asdo.rows(), ts_asosmo.rows());
  merged.reserve(n);
  for (std::size_t i = 0; i < n; ++i) merged.push_row({t[i], d1[i], ha[i], hs[i]});
  emit_plot_data(merged, merged.columns(), rf.out + "/disturbance_elev_compare.dat");

  std::ostringstream o;
  o.precision(6);
  o << "disturbance = " << disturbance << "\n";
  o << "tv_Vf_asdo = " << rep_a.tv_Vf << "\n";
  o << "tv_Vf_asosmo = " << rep_s.tv_Vf << "\n";
  o << "tv_Vb_asdo = " << rep_a.tv_Vb << "\n";
  o << "tv_Vb_asosmo = " << rep_s.tv_Vb << "\n";
  o << "tv_ordering_Vf = " << (rep_a.tv_Vf < rep_s.tv_Vf ? "asdo_smoother" : "asosmo_smoother")
    << "\n";
  o << "tv_ordering_Vb = " << (rep_a.tv_Vb < rep_s.tv_Vb ? "asdo_smoother" : "asosmo_smoother")
    << "\n";
  o << "obs_err_elev_asdo = " << rep_a.obs_err_elev << "\n";
  o << "obs_err_elev_asosmo = " << rep_s.obs_err_elev << "\n";
  o << "obs_err_pitch_asdo = " << rep_a.obs_err_pitch << "\n";
  o << "obs_err_pitch_asosmo = " << rep_s.obs_err_pitch << "\n";
  {
    std::ofstream f(fs::path(rf.out) / "compare.txt");
    f << o.str();
  }
  std::cout << o.str();
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"3-DOF helicopter attitude-tracking simulator (ASDO + FFTCF backstepping)"};
  app.require_subcommand(1);

  RunFlags rf_case1, rf_case2, rf_sim, rf_cmp;
  std::string observer = "asdo";
  std::string disturbance1 = "constant";
  std::string disturbance_cmp = "sinusoid";
  std::string scenario_path, series_path, gains_scenario_path;
  double band_m = 0.01, hold_m = 1.0;
  AsdoGains vg_gains;

  CLI::App* c1 = app.add_subcommand("case1", "observer comparison experiment preset");
  c1->add_option("--observer", observer, "asdo or asosmo")
      ->check(CLI::IsMember({"asdo", "asosmo"}));
  c1->add_option("--disturbance", disturbance1, "constant or sinusoid")
      ->check(CLI::IsMember({"constant", "sinusoid"}));
  rf_case1.out = "out_case1";
  add_run_flags(c1, rf_case1);

  CLI::App* c2 = app.add_subcommand("case2", "closed-loop tracking experiment preset");
  rf_case2.out = "out_case2";
  add_run_flags(c2, rf_case2);

  CLI::App* csim = app.add_subcommand("simulate", "run a scenario file");
  csim->add_option("--scenario", scenario_path, "scenario config file")->required();
  rf_sim.out = "out_sim";
  add_run_flags(csim, rf_sim);

  CLI::App* cver = app.add_subcommand("verify-gains", "check the observer gain condition");
  cver->add_option("--scenario", gains_scenario_path,
                   "take gains from this scenario's elevation channel");
  cver->add_option("--k1", vg_gains.k1, "observer gain k1");
  cver->add_option("--k2", vg_gains.k2, "observer gain k2");
  cver->add_option("--k3", vg_gains.k3, "observer gain k3");
  cver->add_option("--k4", vg_gains.k4, "observer gain k4");
  cver->add_option("--m", vg_gains.m, "exponent parameter (> 2)");

  CLI::App* ccmp = app.add_subcommand("compare-observers",
                                      "run asdo vs asosmo on an identical scenario");
  ccmp->add_option("--disturbance", disturbance_cmp, "constant or sinusoid")
      ->check(CLI::IsMember({"constant", "sinusoid"}));
  rf_cmp.out = "out_compare";
  add_run_flags(ccmp, rf_cmp);

  CLI::App* cmet = app.add_subcommand("metrics", "post-process a series.csv");
  cmet->add_option("--series", series_path, "series csv produced by a run")->required();
  cmet->add_option("--band", band_m, "settling band [rad]");
  cmet->add_option("--hold", hold_m, "settling hold [s]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(c1)) {
      Scenario sc = preset_case1(observer == "asdo" ? ObserverMode::asdo : ObserverMode::asosmo,
                                 kind_from_word(disturbance1));
      apply_flags(sc, rf_case1);
      run_and_export(sc, rf_case1, rf_case1.out);
      return 0;
    }
    if (app.got_subcommand(c2)) {
      Scenario sc = preset_case2();
      apply_flags(sc, rf_case2);
      run_and_export(sc, rf_case2, rf_case2.out);
      return 0;
    }
    if (app.got_subcommand(csim)) {
      Scenario sc = read_scenario(scenario_path);
      apply_flags(sc, rf_sim);
      run_and_export(sc, rf_sim, rf_sim.out);
      return 0;
    }
    if (app.got_subcommand(cver)) {
      if (!gains_scenario_path.empty())
        vg_gains = read_scenario(gains_scenario_path).elev.asdo;
      return do_verify_gains(vg_gains);
    }
    if (app.got_subcommand(ccmp)) {
      return do_compare(disturbance_cmp, rf_cmp);
    }
    if (app.got_subcommand(cmet)) {
      const TimeSeries ts = read_csv(series_path);
      std::cout << metrics_to_text(compute_metrics(ts, band_m, hold_m));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace heli
