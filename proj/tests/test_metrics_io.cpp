#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "heli/io.hpp"
#include "heli/metrics.hpp"
#include "heli/scenario.hpp"

using namespace heli;
namespace fs = std::filesystem;

namespace {

TimeSeries make_series(const std::vector<std::string>& cols) { return TimeSeries(cols); }

TimeSeries sample_signal(double (*f)(double), double h, double T) {
  TimeSeries ts(std::vector<std::string>{"t", "y"});
  const long long n = std::llround(T / h);
  for (long long k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * h;
    ts.push_row({t, f(t)});
  }
  return ts;
}

fs::path temp_dir() {
  const fs::path p = fs::temp_directory_path() / "heli_io_test";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("settle time") {
  SUBCASE("constant zero settles immediately") {
    const TimeSeries ts = sample_signal(+[](double) { return 0.0; }, 1e-3, 3.0);
    const SettleResult r = settle_time(ts, "y", 0.01, 1.0);
    CHECK(r.settled);
    CHECK(r.time == 0.0);
  }

  SUBCASE("exponential decay hits the band at ln(100)") {
    const TimeSeries ts = sample_signal(+[](double t) { return std::exp(-t); }, 1e-3, 10.0);
    const SettleResult r = settle_time(ts, "y", 0.01, 1.0);
    CHECK(r.settled);
    CHECK(r.time == doctest::Approx(4.606).epsilon(1e-9));
  }

  SUBCASE("never inside the band") {
    const TimeSeries ts = sample_signal(+[](double) { return 1.0; }, 1e-3, 3.0);
    CHECK(!settle_time(ts, "y", 0.01, 1.0).settled);
  }

  SUBCASE("too little in-band evidence") {
    const TimeSeries ts = sample_signal(+[](double t) { return t < 2.5 ? 1.0 : 0.0; }, 1e-3, 3.0);
    CHECK(!settle_time(ts, "y", 0.01, 1.0).settled);
    CHECK(settle_time(ts, "y", 0.01, 0.4).settled);
  }

  SUBCASE("bad arguments") {
    const TimeSeries ts = sample_signal(+[](double) { return 0.0; }, 1e-3, 1.0);
    CHECK_THROWS_AS(settle_time(ts, "y", 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(settle_time(ts, "missing", 0.01, 1.0), std::invalid_argument);
  }
}

TEST_CASE("total variation") {
  SUBCASE("constant is flat") {
    const TimeSeries ts = sample_signal(+[](double) { return 0.7; }, 1e-3, 2.0);
    CHECK(total_variation(ts, "y", 0.0, 2.0) == 0.0);
  }

  SUBCASE("full period of a sinusoid") {
    const TimeSeries ts = sample_signal(+[](double t) { return std::sin(2.0 * t); }, 1e-3, 4.0);
    CHECK(total_variation(ts, "y", 0.0, std::numbers::pi) == doctest::Approx(4.0).epsilon(2.5e-3));
  }

  SUBCASE("monotone ramp") {
    const TimeSeries ts = sample_signal(+[](double t) { return t / 2.0; }, 1e-3, 2.0);
    CHECK(total_variation(ts, "y", 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("empty windows throw") {
    const TimeSeries ts = sample_signal(+[](double) { return 0.0; }, 1e-3, 2.0);
    CHECK_THROWS_AS(total_variation(ts, "y", 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(total_variation(ts, "y", 5.0, 6.0), std::invalid_argument);
  }
}

TEST_CASE("rmse and max_abs_after") {
  const TimeSeries ts = sample_signal(+[](double t) { return t < 1.0 ? 2.0 : 0.5; }, 1e-3, 2.0);
  CHECK(max_abs_after(ts, "y", 1.0) == 0.5);
  CHECK(max_abs_after(ts, "y", 0.0) == 2.0);
  CHECK_THROWS_AS(max_abs_after(ts, "y", 10.0), std::invalid_argument);
  const TimeSeries c = sample_signal(+[](double) { return -3.0; }, 1e-3, 1.0);
  CHECK(rmse(c, "y") == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("csv round trip preserves every bit") {
  Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::sinusoid);
  sc.duration = 1.0;
  const TimeSeries ts = simulate(sc);
  const fs::path path = temp_dir() / "series.csv";
  write_csv(ts, path.string());

  const TimeSeries back = read_csv(path.string());
  REQUIRE(back.columns() == ts.columns());
  REQUIRE(back.rows() == ts.rows());
  REQUIRE(back.rows() == 1001);  // duration/step + 1
  for (const auto& c : ts.columns()) {
    const auto& a = ts.col(c);
    const auto& b = back.col(c);
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
  }
  fs::remove(path);
}

TEST_CASE("empty series writes a header-only csv") {
  const TimeSeries ts = make_series({"t", "a", "b"});
  const fs::path path = temp_dir() / "empty.csv";
  write_csv(ts, path.string());
  std::ifstream f(path);
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(line == "t,a,b");
  CHECK(!std::getline(f, line));
  fs::remove(path);
}

TEST_CASE("plot data export") {
  Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::constant);
  sc.duration = 0.05;
  const TimeSeries ts = simulate(sc);
  const fs::path path = temp_dir() / "plot.dat";

  SUBCASE("writes a commented header and one line per sample") {
    emit_plot_data(ts, {"t", "d1", "dhat_elev", "dhat_pitch"}, path.string());
    std::ifstream f(path);
    std::string line;
    REQUIRE(std::getline(f, line));
    CHECK(line == "# t d1 dhat_elev dhat_pitch");
    std::size_t n = 0;
    while (std::getline(f, line)) ++n;
    CHECK(n == ts.rows());
    fs::remove(path);
  }

  SUBCASE("unknown column") {
    CHECK_THROWS_AS(emit_plot_data(ts, {"t", "bogus"}, path.string()), std::invalid_argument);
  }

  SUBCASE("empty selection") {
    CHECK_THROWS_AS(emit_plot_data(ts, {}, path.string()), std::invalid_argument);
  }
}

TEST_CASE("scenario config round trip") {
  SUBCASE("tracking preset") {
    const Scenario sc = preset_case2();
    const Scenario back = parse_scenario_config(scenario_to_config(sc));
    CHECK(back == sc);
  }

  SUBCASE("observer preset with asosmo") {
    const Scenario sc = preset_case1(ObserverMode::asosmo, DisturbanceKind::sinusoid);
    const Scenario back = parse_scenario_config(scenario_to_config(sc));
    CHECK(back == sc);
  }

  SUBCASE("tabulated disturbance") {
    Scenario sc = preset_case2();
    sc.d2.kind = DisturbanceKind::tabulated;
    sc.d2.table = {{0.0, 0.25}, {50.0, -1.5}, {100.0, 0.125}};
    const Scenario back = parse_scenario_config(scenario_to_config(sc));
    CHECK(back == sc);
  }

  SUBCASE("awkward but exactly representable numbers survive") {
    Scenario sc = preset_case2();
    sc.init.x1 = -2.0 * std::numbers::pi / 15.0;
    sc.elev.asdo.kappa = 0.1 + 0.2;  // 0.30000000000000004
    const Scenario back = parse_scenario_config(scenario_to_config(sc));
    CHECK(back.init.x1 == sc.init.x1);
    CHECK(back.elev.asdo.kappa == sc.elev.asdo.kappa);
  }
}

TEST_CASE("scenario config parsing errors") {
  CHECK_THROWS_WITH_AS(parse_scenario_config("bogus.key = 1\n"),
                       doctest::Contains("unknown scenario key"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_scenario_config("sim.step = 1e-3\nsim.step = 1e-2\n"),
                       doctest::Contains("duplicate"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario_config("sim.step\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario_config("sim.step = fast\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario_config("sim.integrator = verlet\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario_config("d1.table = 0-1\n"), std::invalid_argument);
  CHECK_NOTHROW(parse_scenario_config("# just a comment\n\n  \n"));
}

TEST_CASE("config files on disk") {
  const fs::path path = temp_dir() / "scenario.cfg";
  Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::sinusoid);
  sc.duration = 3.5;
  write_scenario(sc, path.string());
  const Scenario back = read_scenario(path.string());
  CHECK(back == sc);
  CHECK_THROWS_AS(read_scenario((temp_dir() / "missing.cfg").string()), std::runtime_error);
  fs::remove(path);
}

TEST_CASE("metrics report text") {
  Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::constant);
  sc.duration = 2.0;
  const TimeSeries ts = simulate(sc);
  const MetricsReport rep = compute_metrics(ts, 0.01, 0.5);
  const std::string text = metrics_to_text(rep);
  CHECK(text.find("rmse_z1 = ") != std::string::npos);
  CHECK(text.find("settle_z3 = ") != std::string::npos);
  CHECK(text.find("tv_Vf = ") != std::string::npos);
  CHECK(text.find("saturation_fraction = ") != std::string::npos);
  CHECK(rep.saturation == 0.0);

  // metrics are pure functions of the series
  const MetricsReport again = compute_metrics(ts, 0.01, 0.5);
  CHECK(again.rmse_z1 == rep.rmse_z1);
  CHECK(again.rmse_z3 == rep.rmse_z3);
  CHECK(again.obs_err_elev == rep.obs_err_elev);
  CHECK(again.tv_Vf == rep.tv_Vf);
  CHECK(metrics_to_text(again) == text);
}
