#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heli/controller.hpp"
#include "heli/metrics.hpp"
#include "heli/scenario.hpp"

using namespace heli;

TEST_CASE("reference evaluation") {
  const Scenario sc;

  SUBCASE("elevation profile") {
    const RefValue r0 = reference_eval(sc.ref1, 0.0);
    CHECK(r0.value == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(r0.derivative == 0.0);
    const RefValue r = reference_eval(sc.ref1, std::numbers::pi / 0.16);
    CHECK(r.derivative == doctest::Approx(0.016).epsilon(1e-12));
  }

  SUBCASE("pitch profile") {
    const RefValue r0 = reference_eval(sc.ref3, 0.0);
    CHECK(r0.value == 0.0);
    CHECK(r0.derivative == doctest::Approx(0.006).epsilon(1e-15));
  }
}

TEST_CASE("disturbance evaluation") {
  SUBCASE("constant") {
    DisturbanceProfile d;
    d.kind = DisturbanceKind::constant;
    d.amplitude = 1.0;
    CHECK(disturbance_eval(d, 0.0) == 1.0);
    CHECK(disturbance_eval(d, 17.3) == 1.0);
  }

  SUBCASE("sinusoid") {
    DisturbanceProfile d;
    d.kind = DisturbanceKind::sinusoid;
    d.amplitude = 1.0;
    d.frequency = 2.0;
    CHECK(disturbance_eval(d, 0.0) == 0.0);
    CHECK(disturbance_eval(d, std::numbers::pi / 4.0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("tabulated interpolation and range errors") {
    DisturbanceProfile d;
    d.kind = DisturbanceKind::tabulated;
    d.table = {{0.0, 0.0}, {1.0, 0.5}, {2.0, 1.0}};
    CHECK(disturbance_eval(d, 0.5) == doctest::Approx(0.25));
    CHECK(disturbance_eval(d, 1.0) == doctest::Approx(0.5));
    CHECK(disturbance_eval(d, 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(disturbance_eval(d, 2.5), std::domain_error);
    CHECK_THROWS_AS(disturbance_eval(d, -0.1), std::domain_error);
  }
}

TEST_CASE("presets") {
  SUBCASE("case1 constant asdo") {
    const Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::constant);
    CHECK(sc.d1.kind == DisturbanceKind::constant);
    CHECK(sc.d1.amplitude == 1.0);
    CHECK(sc.d2 == sc.d1);
    CHECK(sc.elev.asdo.m == 3.0);
    CHECK(sc.duration == 20.0);
    CHECK(sc.step == 1e-3);
    CHECK(sc.integrator == Integrator::rk4);
    CHECK(sc.init.x1 == doctest::Approx(-2.0 * std::numbers::pi / 15.0));
    CHECK(sc.init.x2 == 0.0);
    CHECK(sc.init.x3 == 0.0);
  }

  SUBCASE("case1 sinusoid asosmo") {
    const Scenario sc = preset_case1(ObserverMode::asosmo, DisturbanceKind::sinusoid);
    CHECK(sc.elev.observer_mode == ObserverMode::asosmo);
    CHECK(sc.elev.asdo.m == 2.0);
    CHECK(sc.pitch.asdo.m == 2.0);
    CHECK(sc.d1.kind == DisturbanceKind::sinusoid);
    CHECK(sc.d1.frequency == 2.0);
  }

  SUBCASE("case1 has no tabulated preset") {
    CHECK_THROWS_AS(preset_case1(ObserverMode::asdo, DisturbanceKind::tabulated),
                    std::invalid_argument);
  }

  SUBCASE("case2 shares the case1 gain set") {
    const Scenario c1 = preset_case1(ObserverMode::asdo, DisturbanceKind::sinusoid);
    const Scenario c2 = preset_case2();
    CHECK(c2.elev == c1.elev);
    CHECK(c2.pitch == c1.pitch);
    CHECK(c2.d1 == c1.d1);
    CHECK(c2.duration == 100.0);
    CHECK(c2.integrator == Integrator::euler);
    CHECK(c2.pitch.ctrl.kbar1 == 3.0);
    CHECK(c2.pitch.ctrl.kbar2 == 5.0);
    CHECK(c2.pitch.ctrl.l1 == 2.0);
    CHECK(c2.pitch.ctrl.s1 == 2.0);
  }
}

TEST_CASE("scenario validation") {
  Scenario sc = preset_case2();

  SUBCASE("reference setup warns only about the documented rate conditions") {
    const auto w = validate_scenario(sc);
    REQUIRE(w.size() == 2);
    CHECK(w[0].find("elev: ") == 0);
    CHECK(w[1].find("elev: ") == 0);
  }

  SUBCASE("step and duration") {
    sc.step = 0.0;
    CHECK_THROWS_AS(validate_scenario(sc), std::invalid_argument);
    sc.step = 1.0;
    sc.duration = 0.5;
    CHECK_THROWS_AS(validate_scenario(sc), std::invalid_argument);
  }

  SUBCASE("tabulated profile must cover the horizon") {
    sc.d1.kind = DisturbanceKind::tabulated;
    sc.d1.table = {{0.0, 0.0}, {1.0, 1.0}};  // duration is 100
    CHECK_THROWS_AS(validate_scenario(sc), std::invalid_argument);
    sc.d1.table = {{0.0, 0.0}, {0.5, 1.0}, {0.5, 2.0}, {100.0, 0.0}};  // not increasing
    CHECK_THROWS_AS(validate_scenario(sc), std::invalid_argument);
  }
}

TEST_CASE("simulation bookkeeping") {
  Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::constant);
  sc.duration = 2.0;
  const TimeSeries ts = simulate(sc);

  SUBCASE("row count covers the closed grid") {
    CHECK(ts.rows() == 2001);
    CHECK(ts.col("t").front() == 0.0);
    CHECK(ts.col("t").back() == doctest::Approx(2.0));
  }

  SUBCASE("auxiliary states start at zero") {
    CHECK(ts.col("xi1_elev")[0] == 0.0);
    CHECK(ts.col("xi2_elev")[0] == 0.0);
    CHECK(ts.col("xi1_pitch")[0] == 0.0);
    CHECK(ts.col("xi2_pitch")[0] == 0.0);
    CHECK(ts.col("phat_elev")[0] == 0.0);
  }

  SUBCASE("filter starts on the initial virtual-law value") {
    const RefValue r1 = reference_eval(sc.ref1, 0.0);
    const double z1 = sc.init.x1 - r1.value;
    const double a0 = virtual_law(z1, z1, r1.derivative, sc.elev.ctrl);
    CHECK(ts.col("x1c_elev")[0] == a0);
    CHECK(ts.col("x2c_elev")[0] == 0.0);
  }

  SUBCASE("observer starts on the measured rate") {
    CHECK(ts.col("sd_elev")[0] == 0.0);
    CHECK(ts.col("sd_pitch")[0] == 0.0);
    CHECK(ts.col("Ld_elev")[0] == sc.elev.asdo.Ld0);
  }

  SUBCASE("unknown column throws") {
    CHECK_THROWS_AS(ts.col("nope"), std::invalid_argument);
  }
}

TEST_CASE("determinism: equal scenarios give identical series") {
  Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::sinusoid);
  sc.duration = 2.0;
  const TimeSeries a = simulate(sc);
  const TimeSeries b = simulate(sc);
  REQUIRE(a.rows() == b.rows());
  for (const auto& c : a.columns()) {
    const auto& va = a.col(c);
    const auto& vb = b.col(c);
    for (std::size_t i = 0; i < va.size(); ++i) REQUIRE(va[i] == vb[i]);
  }
}

TEST_CASE("closed-loop regulation with no disturbance") {
  Scenario sc = preset_case2();
  sc.duration = 20.0;
  sc.d1 = DisturbanceProfile{};  // constant zero
  sc.d2 = DisturbanceProfile{};
  sc.init = PlantState{-0.3, 0.0, 0.0, 0.0};  // exactly on both references
  const TimeSeries ts = simulate(sc);
  double worst_e = 0.0, worst_p = 0.0;
  for (std::size_t i = 0; i < ts.rows(); ++i) {
    worst_e = std::max(worst_e, std::abs(ts.col("z1_elev")[i]));
    worst_p = std::max(worst_p, std::abs(ts.col("z1_pitch")[i]));
  }
  CHECK(worst_e < 1e-3);
  CHECK(worst_p < 1e-3);
}

TEST_CASE("adaptive estimate stays nonnegative and bounded") {
  Scenario sc = preset_case2();
  sc.duration = 20.0;
  const TimeSeries ts = simulate(sc);
  for (const char* col : {"phat_elev", "phat_pitch"}) {
    double hi = 0.0;
    for (double v : ts.col(col)) {
      REQUIRE(v >= 0.0);
      hi = std::max(hi, v);
    }
    CHECK(hi < 10.0);
  }
}

namespace {

void check_Ld_monotone_and_frozen(const TimeSeries& ts, const char* ld_col, const char* sd_col,
                                  double eps_d) {
  const auto& ld = ts.col(ld_col);
  const auto& sd = ts.col(sd_col);
  std::size_t last_event = 0;
  bool any_event = false;
  for (std::size_t i = 0; i < sd.size(); ++i) {
    if (std::abs(sd[i]) >= eps_d) {
      last_event = i;
      any_event = true;
    }
  }
  for (std::size_t i = 1; i < ld.size(); ++i) {
    REQUIRE(ld[i] >= ld[i - 1]);
    if (any_event && i > last_event + 1) REQUIRE(ld[i] == ld[i - 1]);
  }
}

}  // namespace

TEST_CASE("adaptive observer gain is nondecreasing and freezes after the last event") {
  Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::sinusoid);
  sc.duration = 10.0;
  const TimeSeries ts = simulate(sc);
  check_Ld_monotone_and_frozen(ts, "Ld_elev", "sd_elev", sc.elev.asdo.eps_d);
  check_Ld_monotone_and_frozen(ts, "Ld_pitch", "sd_pitch", sc.pitch.asdo.eps_d);
}

TEST_CASE("smooth observer output varies less than the sliding-mode variant") {
  Scenario smooth = preset_case1(ObserverMode::asdo, DisturbanceKind::sinusoid);
  Scenario relay = preset_case1(ObserverMode::asosmo, DisturbanceKind::sinusoid);
  smooth.duration = relay.duration = 10.0;
  const TimeSeries ts_smooth = simulate(smooth);
  const TimeSeries ts_relay = simulate(relay);
  CHECK(total_variation(ts_smooth, "dhat_elev", 5.0, 10.0) <
        total_variation(ts_relay, "dhat_elev", 5.0, 10.0));
  CHECK(total_variation(ts_smooth, "dhat_pitch", 5.0, 10.0) <
        total_variation(ts_relay, "dhat_pitch", 5.0, 10.0));
}

TEST_CASE("step refinement") {
  SUBCASE("euler halving on the tracking preset") {
    // measured 7.2e-7 at this horizon; pinned with wide margin
    Scenario sc = preset_case2();
    sc.duration = 10.0;
    const TimeSeries coarse = simulate(sc);
    sc.step = 5e-4;
    const TimeSeries fine = simulate(sc);
    const double dx1 = std::abs(coarse.col("x1").back() - fine.col("x1").back());
    const double dx3 = std::abs(coarse.col("x3").back() - fine.col("x3").back());
    CHECK(dx1 < 1e-4);
    CHECK(dx3 < 1e-4);
  }

  SUBCASE("rk4 halving on the observer preset") {
    // the held-input loop leaves a small step-dependent steady tracking
    // offset (measured 1.2e-3 at 1 ms, shrinking ~4x per halving)
    Scenario sc = preset_case1(ObserverMode::asdo, DisturbanceKind::sinusoid);
    sc.duration = 10.0;
    const TimeSeries coarse = simulate(sc);
    sc.step = 5e-4;
    const TimeSeries fine = simulate(sc);
    const double dx1 = std::abs(coarse.col("x1").back() - fine.col("x1").back());
    const double dx3 = std::abs(coarse.col("x3").back() - fine.col("x3").back());
    CHECK(dx1 < 5e-3);
    CHECK(dx3 < 5e-3);
  }
}

TEST_CASE("tabulated disturbance drives the loop") {
  Scenario sc = preset_case2();
  sc.duration = 1.0;
  sc.d1.kind = DisturbanceKind::tabulated;
  sc.d1.table = {{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}};
  sc.d1.amplitude = 0.0;
  const TimeSeries ts = simulate(sc);
  CHECK(ts.col("d1")[500] == doctest::Approx(1.0));
  CHECK(ts.col("d1")[250] == doctest::Approx(0.5));
}

TEST_CASE("non-finite states abort with the step index") {
  Scenario sc = preset_case2();
  sc.step = 0.5;  // grossly under-resolves the filter; the loop blows up
  sc.duration = 50.0;
  CHECK_THROWS_WITH_AS(simulate(sc), doctest::Contains("non-finite"), std::runtime_error);
}

TEST_CASE("operating-domain excursions are flagged, not clamped") {
  Scenario sc = preset_case2();
  sc.duration = 0.1;
  sc.init.x3 = 1.0;  // cos(1.0) < sqrt(2)/2
  const TimeSeries ts = simulate(sc);
  CHECK(ts.col("domain_violation")[0] == 1.0);
  bool found = false;
  for (const auto& w : ts.warnings)
    if (w.find("operating domain") != std::string::npos) found = true;
  CHECK(found);
}
