#pragma once

#include "pvsim/types.hpp"

namespace pvsim {

/// Datasheet values and single-diode model constants for one PV panel.
struct PanelParams {
    double voc_n = 0.0;   ///< open-circuit voltage at STC, V
    double isc_n = 0.0;   ///< short-circuit current at STC, A
    double kv = 0.0;      ///< Voc temperature coefficient, V/degC (usually negative)
    double ki = 0.0;      ///< Isc temperature coefficient, A/degC
    int n_series = 1;     ///< series cell count
    double ideality = 1.0;  ///< diode ideality factor, [1, 2]
    double r_s = 0.0;     ///< series resistance, ohm
    double r_sh = 1.0;    ///< shunt resistance, ohm

    static constexpr double g_ref = 1000.0;  ///< STC irradiance, W/m^2
    static constexpr double t_ref = 25.0;    ///< STC cell temperature, degC

    /// Throws Error if any invariant is violated.
    void validate() const;
};

/// The shipped default panel. Synthetic 200 W-class parameter set; no real
/// module's datasheet is reproduced here.
PanelParams reference_panel();

/// Diode thermal voltage kT/q at cell temperature `t_c` (degC), in volts.
double thermal_voltage(double t_c);

/// Light-generated current: (isc_n + ki*(t - t_ref)) * g / g_ref, with the
/// temperature-corrected Isc floored at zero.
double photocurrent(const EnvSample& env, const PanelParams& p);

/// Diode saturation current at cell temperature `t_c`. Calibrated so the
/// terminal current is exactly zero at (voc_n + kv*(t_c - t_ref)) under
/// reference irradiance; at STC this pins Voc to voc_n.
double saturation_current(double t_c, const PanelParams& p);

/// Terminal current at panel voltage `v`: solves the implicit single-diode
/// equation to |residual| < 1e-9 A. Throws NonConvergenceError when the root
/// leaves the bracket [-isc_n, 2*isc_n] (pathological inputs).
double panel_current(double v, const EnvSample& env, const PanelParams& p);

/// Voltage where the terminal current crosses zero. Throws NoLightError at
/// zero irradiance.
double open_circuit_voltage(const EnvSample& env, const PanelParams& p);

/// Ground-truth maximum power point: 1000-point scan over [0, Voc] refined
/// by golden-section search. The returned power is never below the best scan
/// point. Throws NoLightError at zero irradiance.
OperatingPoint true_mpp(const EnvSample& env, const PanelParams& p);

}  // namespace pvsim
