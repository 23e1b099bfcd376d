#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pvsim/sim_engine.hpp"

namespace pvsim {

/// Uniformly sampled waveform for harmonic analysis.
struct WaveformSamples {
    std::vector<double> samples;
    double sample_rate = 0.0;  ///< Hz
    double fundamental = 0.0;  ///< Hz
};

/// Harvested energy over ideal-tracker energy, in [0, 1].
/// Throws EmptyTraceError on an empty trace and ZeroIdealError if any record
/// has zero ideal power.
double tracking_efficiency(const Trace& trace);

/// Steps after `disturbance_time` until the trace stays within
/// band * p_ideal of the ideal power for the rest of the run; nullopt when it
/// never does (the NotSettled case).
std::optional<int> settling_steps(const Trace& trace, double disturbance_time,
                                  double band = 0.02);

/// Total harmonic distortion in percent: harmonic amplitudes are extracted by
/// discrete Fourier correlation at integer multiples of the fundamental over
/// a whole number of periods (exact for synchronous sampling), then
/// sqrt(sum A_h^2, h = 2..n) / A_1 * 100.
/// Throws InsufficientSamplesError when fewer than two fundamental periods
/// are covered or the sample rate cannot resolve n_harmonics, and
/// ZeroFundamentalError when A_1 vanishes relative to the signal RMS.
double thd(const WaveformSamples& w, int n_harmonics = 50);

struct SummaryMetrics {
    double tracking_efficiency = 0.0;
    std::vector<std::optional<int>> settling_steps;  ///< one per disturbance time
    double steady_ripple = 0.0;                      ///< tail peak-to-peak power, W
    double mean_power = 0.0;                         ///< W
};

/// Post-run roll-up used by the CLI tables. Ripple is measured over the last
/// quarter of the trace.
SummaryMetrics summarize(const Trace& trace, std::span<const double> disturbance_times,
                         double band = 0.02);

}  // namespace pvsim
