#include <doctest.h>

#include <cmath>
#include <cstring>

#include "nnosim/device.hpp"
#include "nnosim/errors.hpp"

using namespace nnosim;

TEST_CASE("cloud resistance is linear in thickness") {
    CloudState c;
    c.x = 2.5;
    CHECK(cloud_resistance(c) == doctest::Approx(1.0).epsilon(1e-12));
    c.x = 2.0;
    CHECK(cloud_resistance(c) == doctest::Approx(0.8).epsilon(1e-12));
    c.x = c.x_min;  // 1.5 µm boundary
    CHECK(cloud_resistance(c) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(cloud_conductance(c) == doctest::Approx(1.0 / 0.6).epsilon(1e-12));
}

TEST_CASE("cloud resistance rejects off-bounds thickness") {
    CloudState c;
    c.x = 3.5;
    CHECK_THROWS_AS(cloud_resistance(c), StateError);
    c.x = 1.0;
    CHECK_THROWS_AS(cloud_resistance(c), StateError);
}

TEST_CASE("cloud drift: fixed point, hand value, clamping") {
    CloudDynParams p;
    CloudState c;
    c.x = c.x_rest = 2.25;

    SUBCASE("zero field at rest is a fixed point") {
        CloudState next = step_cloud(c, p, 0.0, 0.5);
        CHECK(next.x == c.x);
    }
    SUBCASE("supra-threshold drive expands by eta_plus*(v - v_th)*dt") {
        CloudDynParams frozen = p;
        frozen.tau_x = std::numeric_limits<double>::infinity();
        CloudState next = step_cloud(c, frozen, 5.0, 0.5);
        CHECK(next.x - c.x == doctest::Approx(0.004).epsilon(1e-12));
    }
    SUBCASE("negative drive shrinks faster than positive expands") {
        CloudDynParams frozen = p;
        frozen.tau_x = std::numeric_limits<double>::infinity();
        double up = step_cloud(c, frozen, 5.0, 0.5).x - c.x;
        double down = c.x - step_cloud(c, frozen, -5.0, 0.5).x;
        CHECK(down > up);
        CHECK(down == doctest::Approx(2.0 * up).epsilon(1e-12));
    }
    SUBCASE("sub-threshold drive only relaxes") {
        CloudState away = c;
        away.x = 2.5;
        CloudState next = step_cloud(away, p, 0.5, 0.5);
        CHECK(next.x < away.x);
        CHECK(next.x > away.x_rest);
    }
    SUBCASE("repeated large drive saturates at x_max") {
        CloudState s = c;
        for (int k = 0; k < 10000; ++k) s = step_cloud(s, p, 50.0, 0.5);
        CHECK(s.x == s.x_max);
    }
    SUBCASE("non-positive dt is rejected") {
        CHECK_THROWS_AS(step_cloud(c, p, 0.0, 0.0), ArgumentError);
        CHECK_THROWS_AS(step_cloud(c, p, 0.0, -1.0), ArgumentError);
    }
}

TEST_CASE("dynamics parameter validation") {
    CloudDynParams p;
    CHECK_NOTHROW(p.validate());
    p.eta_plus = 0.005;  // now eta_minus < eta_plus
    CHECK_THROWS_AS(p.validate(), ArgumentError);
    p = CloudDynParams{};
    p.tau_x = 0.0;
    CHECK_THROWS_AS(p.validate(), ArgumentError);
}

TEST_CASE("non-volatile programming moves resistance monotonically") {
    NonVolatileCell cell;

    SUBCASE("positive pulses walk resistance up with shrinking increments") {
        double prev_r = 1.0 / cell.g;
        double prev_step = 1e9;
        NonVolatileCell c = cell;
        c.g = c.g_max;  // start from the low-resistance end
        prev_r = 1.0 / c.g;
        for (int k = 0; k < 50; ++k) {
            c = program_nonvolatile(c, PulseSpec{9.0, 10.0, 0.0, 1});
            double r = 1.0 / c.g;
            CHECK(r > prev_r);
            CHECK(r - prev_r < prev_step);
            prev_step = r - prev_r;
            prev_r = r;
        }
        CHECK(prev_r < 1.0 / c.g_min + 1e-9);
    }
    SUBCASE("negative pulses walk resistance down") {
        NonVolatileCell c = cell;  // starts at g_min (350 kΩ)
        double prev_r = 1.0 / c.g;
        for (int k = 0; k < 50; ++k) {
            c = program_nonvolatile(c, PulseSpec{-8.0, 10.0, 0.0, 1});
            double r = 1.0 / c.g;
            CHECK(r < prev_r);
            prev_r = r;
        }
        CHECK(prev_r > 1.0 / c.g_max - 1e-12);
    }
    SUBCASE("sub-threshold pulses leave the state bit-identical") {
        NonVolatileCell c = cell;
        c.g = 7.0;
        NonVolatileCell after = program_nonvolatile(c, PulseSpec{0.1, 10.0, 0.0, 5});
        CHECK(std::memcmp(&after.g, &c.g, sizeof(double)) == 0);
        after = program_nonvolatile(c, PulseSpec{-2.4, 10.0, 0.0, 5});
        CHECK(std::memcmp(&after.g, &c.g, sizeof(double)) == 0);
    }
}

TEST_CASE("linear reads") {
    NonVolatileCell cell;
    cell.g = 10.0;
    CHECK(read_cell(cell, 0.1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(read_cell(cell, 0.0) == 0.0);
    cell.g = 25.0;  // 40 kΩ endpoint
    CHECK(read_cell(cell, 0.1) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK_THROWS_AS(read_cell(cell, 0.2), ReadRangeError);
    CHECK_THROWS_AS(read_cell(cell, -0.11), ReadRangeError);
}

TEST_CASE("film capacitance calibration") {
    CHECK(calibrate_film_capacitance(5.0, 0.9, 0.9) ==
          doctest::Approx(5.0 * 2.0 / 0.9).epsilon(1e-12));  // ≈ 11.1 pF
    // Doubling both resistances halves the capacitance.
    CHECK(calibrate_film_capacitance(5.0, 1.8, 1.8) ==
          doctest::Approx(0.5 * calibrate_film_capacitance(5.0, 0.9, 0.9))
              .epsilon(1e-12));
    CHECK_THROWS_AS(calibrate_film_capacitance(0.0, 0.9, 0.9), ArgumentError);
    CHECK_THROWS_AS(calibrate_film_capacitance(5.0, 0.0, 0.9), ArgumentError);
}

TEST_CASE("decay fit recovers a synthetic exponential") {
    CurrentTrace trace;
    trace.dt_us = 0.1;
    for (int k = 0; k < 250; ++k) {
        double t = 0.1 * (k + 1);
        trace.t_us.push_back(t);
        trace.i_ua.push_back(2.0 * std::exp(-t / 5.0));
    }
    DecayFit fit = fit_decay_constant(trace);
    CHECK(fit.tau_us == doctest::Approx(5.0).epsilon(0.01));
    CHECK(fit.i0_ua == doctest::Approx(2.0).epsilon(0.01));
    CHECK(fit.r_squared > 0.999);
}

TEST_CASE("decay fit error paths") {
    CurrentTrace flat;
    flat.dt_us = 0.1;
    for (int k = 0; k < 100; ++k) {
        flat.t_us.push_back(0.1 * (k + 1));
        flat.i_ua.push_back(1.0);
    }
    CHECK_THROWS_AS(fit_decay_constant(flat), FitError);

    CurrentTrace rising = flat;
    for (int k = 0; k < 100; ++k) rising.i_ua[k] = 0.1 * (k + 1);
    CHECK_THROWS_AS(fit_decay_constant(rising), FitError);

    CurrentTrace with_zero = flat;
    with_zero.i_ua[50] = 0.0;
    CHECK_THROWS_AS(fit_decay_constant(with_zero), FitError);

    // Short window: exponential with tau = 5 µs but only 2 µs of data.
    CurrentTrace brief;
    brief.dt_us = 0.1;
    for (int k = 0; k < 20; ++k) {
        double t = 0.1 * (k + 1);
        brief.t_us.push_back(t);
        brief.i_ua.push_back(std::exp(-t / 5.0));
    }
    CHECK_THROWS_AS(fit_decay_constant(brief), FitError);
}

TEST_CASE("pair transient: zero drive gives a zero trace") {
    PairParams params;
    CurrentTrace trace = simulate_pair_transient(PulseSpec{0.0, 0.5, 0.5, 3}, params);
    for (double i : trace.i_ua) CHECK(i == 0.0);
}

TEST_CASE("pair transient accumulates over a short-interval train") {
    PairParams params;
    PulseSpec train{5.0, 0.5, 0.5, 10};
    CurrentTrace trace = simulate_pair_transient(train, params);
    // Current sampled at each pulse fall grows toward saturation.
    double prev = 0.0;
    for (int p = 0; p < train.count; ++p) {
        double t_fall = p * (train.width + train.interval) + train.width;
        auto k = static_cast<std::size_t>(std::lround(t_fall / trace.dt_us)) - 1;
        CHECK(trace.i_ua[k] > prev);
        prev = trace.i_ua[k];
    }
}

TEST_CASE("longer inter-pulse intervals accumulate less") {
    PairParams params;
    double prev = 1e9;
    for (double interval : {0.5, 1.5, 2.5, 3.5}) {
        PulseSpec train{5.0, 0.5, interval, 10};
        CurrentTrace trace = simulate_pair_transient(train, params);
        double t_end = train.train_duration();
        auto k = static_cast<std::size_t>(std::lround(t_end / trace.dt_us)) - 1;
        CHECK(trace.i_ua[k] < prev);
        prev = trace.i_ua[k];
    }
}

TEST_CASE("pair relaxation fits the calibrated time constant") {
    PairParams params;
    PulseSpec single{5.0, 0.5, 0.5, 1};
    CurrentTrace trace = simulate_pair_transient(single, params);
    CurrentTrace tail = slice_after(trace, single.width + params.sample_dt_us);
    DecayFit fit = fit_decay_constant(tail);
    CHECK(fit.tau_us == doctest::Approx(5.0).epsilon(0.05));
    CHECK(fit.r_squared > 0.99);
}

TEST_CASE("pair relaxation is exactly exponential with drift disabled") {
    PairParams params;
    params.dyn.eta_plus = 1e-12;  // effectively frozen clouds
    params.dyn.eta_minus = 2e-12;
    params.dyn.tau_x = std::numeric_limits<double>::infinity();
    PulseSpec single{5.0, 0.5, 0.5, 1};
    CurrentTrace trace = simulate_pair_transient(single, params);
    CurrentTrace tail = slice_after(trace, single.width + params.sample_dt_us);
    DecayFit fit = fit_decay_constant(tail);
    CHECK(fit.tau_us == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("multilevel schedule: monotone, separated, retained") {
    NonVolatileCell cell;
    MultilevelResult res = program_multilevel(cell, 16);
    REQUIRE(res.cells.size() == 16);
    const double step = (cell.g_max - cell.g_min) / 15.0;
    for (int i = 0; i < 16; ++i) {
        CHECK(res.cells[i].g == doctest::Approx(res.targets_us_g[i]).epsilon(1e-9));
        if (i > 0) {
            CHECK(res.cells[i].g > res.cells[i - 1].g);
            CHECK(res.cells[i].g - res.cells[i - 1].g >= step * (1.0 - 1e-9));
        }
        if (i > 0) CHECK(res.pulse_counts[i] > 0);
        CHECK(res.pulse_counts[i] < 20000);
    }
    CHECK(res.cells.front().g == doctest::Approx(cell.g_min).epsilon(1e-12));
    CHECK(res.cells.back().g == doctest::Approx(cell.g_max).epsilon(1e-12));

    // Retention: sub-threshold reads and pulses leave each level bit-identical.
    for (const auto& c : res.cells) {
        double g_before = c.g;
        for (int k = 0; k < 1000; ++k) (void)read_cell(c, 0.1);
        NonVolatileCell after = program_nonvolatile(c, PulseSpec{0.1, 0.5, 0.0, 10});
        CHECK(std::memcmp(&after.g, &g_before, sizeof(double)) == 0);
    }
}
