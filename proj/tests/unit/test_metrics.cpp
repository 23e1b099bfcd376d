#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "pvsim/errors.hpp"
#include "pvsim/metrics.hpp"

using namespace pvsim;

namespace {

Trace synthetic_trace(const std::vector<double>& p_pv, const std::vector<double>& p_ideal,
                      double dt = 0.01) {
    Trace tr;
    for (std::size_t k = 0; k < p_pv.size(); ++k)
        tr.records.push_back({k * dt, 1000.0, 25.0, 0.5, 0.0, 0.0, p_pv[k], p_ideal[k],
                              ControlMode::Fine});
    return tr;
}

WaveformSamples sine_wave(int samples_per_period, int periods, double amp = 1.0,
                          double third_harmonic = 0.0, double phase = 0.0) {
    WaveformSamples w;
    w.fundamental = 50.0;
    w.sample_rate = 50.0 * samples_per_period;
    const int n = samples_per_period * periods;
    w.samples.reserve(std::size_t(n));
    for (int j = 0; j < n; ++j) {
        const double x = 2.0 * std::numbers::pi * j / samples_per_period + phase;
        w.samples.push_back(amp * (std::sin(x) + third_harmonic * std::sin(3.0 * x)));
    }
    return w;
}

WaveformSamples square_wave(int samples_per_period, int periods) {
    WaveformSamples w;
    w.fundamental = 50.0;
    w.sample_rate = 50.0 * samples_per_period;
    for (int j = 0; j < samples_per_period * periods; ++j)
        w.samples.push_back(j % samples_per_period < samples_per_period / 2 ? 1.0 : -1.0);
    return w;
}

// Harmonic amplitudes of the sampled square wave are known in closed form:
// A_h proportional to 1/sin(pi*h/N) for odd h. Independent of the DFT path.
double analytic_square_thd(int samples_per_period, int n_harmonics) {
    const double a1 = 1.0 / std::sin(std::numbers::pi / samples_per_period);
    double sum = 0.0;
    for (int h = 3; h <= n_harmonics; h += 2) {
        const double ah = 1.0 / std::sin(std::numbers::pi * h / samples_per_period);
        sum += ah * ah;
    }
    return 100.0 * std::sqrt(sum) / a1;
}

}  // namespace

TEST_CASE("tracking efficiency of a pinned trace is one") {
    const auto tr = synthetic_trace({200.0, 200.0, 200.0}, {200.0, 200.0, 200.0});
    CHECK(tracking_efficiency(tr) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("tracking efficiency of a dead trace is zero") {
    const auto tr = synthetic_trace({0.0, 0.0}, {200.0, 200.0});
    CHECK(tracking_efficiency(tr) == 0.0);
}

TEST_CASE("tracking efficiency rejects empty and zero-ideal traces") {
    CHECK_THROWS_AS(tracking_efficiency(Trace{}), EmptyTraceError);
    const auto tr = synthetic_trace({10.0, 10.0}, {200.0, 0.0});
    CHECK_THROWS_AS(tracking_efficiency(tr), ZeroIdealError);
}

TEST_CASE("tracking efficiency does not depend on the time scale") {
    const std::vector<double> p{180.0, 190.0, 199.0, 200.0};
    const std::vector<double> pi{200.0, 200.0, 200.0, 200.0};
    CHECK(tracking_efficiency(synthetic_trace(p, pi, 0.01)) ==
          tracking_efficiency(synthetic_trace(p, pi, 7.0)));
}

TEST_CASE("settling is zero for a trace already inside the band") {
    const auto tr = synthetic_trace({199.0, 199.0, 199.0}, {200.0, 200.0, 200.0});
    CHECK(settling_steps(tr, 0.01) == 0);
}

TEST_CASE("a trace that never re-enters the band reports NotSettled") {
    const auto tr = synthetic_trace({199.0, 150.0, 150.0}, {200.0, 200.0, 200.0});
    CHECK(settling_steps(tr, 0.01) == std::nullopt);
}

TEST_CASE("settling counts steps from the disturbance to the last violation") {
    //          k:    0      1      2      3      4      5
    const auto tr = synthetic_trace({200.0, 120.0, 150.0, 180.0, 199.0, 199.5},
                                    {200.0, 200.0, 200.0, 200.0, 200.0, 200.0});
    CHECK(settling_steps(tr, 0.01) == 3);   // k0=1, last violation k=3
    CHECK(settling_steps(tr, 0.035) == 0);  // k0=4, a past violation does not count
}

TEST_CASE("settling rejects a disturbance beyond the trace") {
    const auto tr = synthetic_trace({199.0}, {200.0});
    CHECK_THROWS_AS(settling_steps(tr, 1.0), OutOfRangeError);
}

TEST_CASE("a pure sine has zero distortion") {
    CHECK(thd(sine_wave(128, 4)) < 1e-6);
}

TEST_CASE("a 10% third harmonic reads as 10% distortion") {
    CHECK(thd(sine_wave(128, 4, 1.0, 0.10)) == doctest::Approx(10.0).epsilon(1e-5));
}

TEST_CASE("square-wave distortion matches the closed-form harmonic series") {
    const double measured = thd(square_wave(102, 4), 50);
    const double analytic = analytic_square_thd(102, 50);
    CHECK(measured == doctest::Approx(analytic).epsilon(1e-9));
    CHECK(std::abs(measured - 48.3) <= 0.2);
}

TEST_CASE("distortion is invariant to amplitude scaling and time shift") {
    const double base = thd(sine_wave(128, 4, 1.0, 0.10));
    const double scaled = thd(sine_wave(128, 4, 123.456, 0.10));
    const double shifted = thd(sine_wave(128, 4, 1.0, 0.10, 1.234));
    CHECK(std::abs(scaled - base) <= 1e-9 * base);
    CHECK(std::abs(shifted - base) <= 1e-9 * base);
}

TEST_CASE("adding harmonic content strictly increases distortion") {
    const double clean = thd(sine_wave(128, 4, 1.0, 0.0));
    const double low = thd(sine_wave(128, 4, 1.0, 0.05));
    const double high = thd(sine_wave(128, 4, 1.0, 0.10));
    CHECK(clean < low);
    CHECK(low < high);
}

TEST_CASE("distortion input validation") {
    CHECK_THROWS_AS(thd(sine_wave(128, 1)), InsufficientSamplesError);  // one period
    WaveformSamples w = sine_wave(64, 4);
    CHECK_THROWS_AS(thd(w, 50), InsufficientSamplesError);  // Nyquist for h=50
    CHECK_THROWS_AS(thd(sine_wave(128, 4), 1), Error);      // n_harmonics < 2

    // all the energy sits at the third harmonic: no fundamental to normalize by
    WaveformSamples no_fund = sine_wave(128, 4, 1.0, 0.0);
    for (std::size_t j = 0; j < no_fund.samples.size(); ++j)
        no_fund.samples[j] = std::sin(3.0 * 2.0 * std::numbers::pi * double(j) / 128.0);
    CHECK_THROWS_AS(thd(no_fund), ZeroFundamentalError);
}

TEST_CASE("summarize rolls up efficiency, settling, ripple and mean power") {
    const auto tr = synthetic_trace({200.0, 120.0, 150.0, 180.0, 199.0, 199.5, 199.0, 199.5},
                                    std::vector<double>(8, 200.0));
    const double dist = 0.01;
    const auto sm = summarize(tr, std::span(&dist, 1));
    CHECK(sm.tracking_efficiency == doctest::Approx((200 + 120 + 150 + 180 + 199 + 199.5 + 199 + 199.5) / 1600.0));
    REQUIRE(sm.settling_steps.size() == 1);
    CHECK(sm.settling_steps[0] == 3);
    CHECK(sm.steady_ripple == doctest::Approx(0.5));
    CHECK(sm.mean_power == doctest::Approx(1447.0 / 8.0));
}
