#include "pvsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "pvsim/errors.hpp"

namespace pvsim {

double tracking_efficiency(const Trace& trace) {
    if (trace.records.empty()) throw EmptyTraceError("tracking_efficiency: empty trace");
    double harvested = 0.0;
    double ideal = 0.0;
    for (const auto& r : trace.records) {
        if (r.p_ideal <= 0.0)
            throw ZeroIdealError("tracking_efficiency: record with zero ideal power");
        harvested += r.p_pv;
        ideal += r.p_ideal;
    }
    return harvested / ideal;  // uniform dt cancels
}

std::optional<int> settling_steps(const Trace& trace, double disturbance_time,
                                  double band) {
    if (trace.records.empty()) throw EmptyTraceError("settling_steps: empty trace");
    const auto& recs = trace.records;

    std::size_t k0 = recs.size();
    for (std::size_t k = 0; k < recs.size(); ++k) {
        if (recs[k].time >= disturbance_time) {
            k0 = k;
            break;
        }
    }
    if (k0 == recs.size()) throw OutOfRangeError("settling_steps: disturbance beyond trace");

    std::ptrdiff_t last_bad = -1;
    for (std::size_t k = 0; k < recs.size(); ++k) {
        if (std::abs(recs[k].p_ideal - recs[k].p_pv) > band * recs[k].p_ideal)
            last_bad = std::ptrdiff_t(k);
    }
    if (last_bad + 1 >= std::ptrdiff_t(recs.size())) return std::nullopt;  // never settles
    return int(std::max<std::ptrdiff_t>(last_bad + 1 - std::ptrdiff_t(k0), 0));
}

double thd(const WaveformSamples& w, int n_harmonics) {
    if (n_harmonics < 2) throw Error("thd: n_harmonics must be >= 2");
    if (!(w.fundamental > 0.0) || !(w.sample_rate > 0.0))
        throw Error("thd: sample_rate and fundamental must be > 0");
    if (!(w.sample_rate > 2.0 * w.fundamental * n_harmonics))
        throw InsufficientSamplesError(
            "thd: sample rate cannot resolve the requested harmonics");

    const double samples_per_period = w.sample_rate / w.fundamental;
    const auto periods = static_cast<std::size_t>(
        double(w.samples.size()) / samples_per_period + 1e-9);
    if (periods < 2)
        throw InsufficientSamplesError("thd: need at least two fundamental periods");

    // analysis window: whole periods only, so rectangular correlation is exact
    // for synchronous sampling
    const auto n_use = static_cast<std::size_t>(
        std::llround(double(periods) * samples_per_period));

    double rms_sq = 0.0;
    for (std::size_t j = 0; j < n_use; ++j) rms_sq += w.samples[j] * w.samples[j];
    const double rms = std::sqrt(rms_sq / double(n_use));

    double fundamental_amp = 0.0;
    double harmonic_sq = 0.0;
    for (int h = 1; h <= n_harmonics; ++h) {
        const double omega = 2.0 * std::numbers::pi * h * w.fundamental / w.sample_rate;
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n_use; ++j)
            acc += w.samples[j] * std::polar(1.0, -omega * double(j));
        const double amp = 2.0 * std::abs(acc) / double(n_use);
        if (h == 1)
            fundamental_amp = amp;
        else
            harmonic_sq += amp * amp;
    }

    if (fundamental_amp < 1e-12 * rms || fundamental_amp == 0.0)
        throw ZeroFundamentalError("thd: no energy at the fundamental");
    return 100.0 * std::sqrt(harmonic_sq) / fundamental_amp;
}

SummaryMetrics summarize(const Trace& trace, std::span<const double> disturbance_times,
                         double band) {
    SummaryMetrics sm;
    sm.tracking_efficiency = tracking_efficiency(trace);
    for (double td : disturbance_times)
        sm.settling_steps.push_back(settling_steps(trace, td, band));

    const auto& recs = trace.records;
    const std::size_t tail = recs.size() - recs.size() / 4;
    double lo = recs.back().p_pv;
    double hi = lo;
    double total = 0.0;
    for (std::size_t k = 0; k < recs.size(); ++k) {
        total += recs[k].p_pv;
        if (k >= tail) {
            lo = std::min(lo, recs[k].p_pv);
            hi = std::max(hi, recs[k].p_pv);
        }
    }
    sm.steady_ripple = hi - lo;
    sm.mean_power = total / double(recs.size());
    return sm;
}

}  // namespace pvsim
