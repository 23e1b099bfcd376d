#pragma once

#include "pvsim/panel.hpp"
#include "pvsim/types.hpp"

namespace pvsim {

/// Largest admissible duty cycle. Caps the boost ratio 1/(1-D) well below its
/// singularity.
constexpr double kDutyMax = 0.95;

/// Fixed battery/bus parameters on the converter output side.
struct BusParams {
    double v_l = 60.0;        ///< bus voltage, V
    double efficiency = 1.0;  ///< converter efficiency hook; 1.0 = lossless

    void validate() const;
};

/// Panel-side voltage commanded by a duty cycle: (1 - duty) * v_l.
/// Throws DutyOutOfRangeError for duty outside [0, kDutyMax].
double panel_voltage_for_duty(double duty, const BusParams& bus);

/// Duty cycle that places the panel at `v_target`: 1 - v_target / v_l,
/// clamped to [0, kDutyMax]. Throws TargetAboveBusError when v_target > v_l.
double duty_for_target_voltage(double v_target, const BusParams& bus);

/// Quasi-static operating point of the panel/converter pair at one duty.
/// Panel voltages at or above Voc yield zero current (no reverse conduction).
OperatingPoint solve_operating_point(double duty, const EnvSample& env,
                                     const PanelParams& panel, const BusParams& bus);

/// Power delivered to the bus after the efficiency hook.
double bus_power(const OperatingPoint& op, const BusParams& bus);

}  // namespace pvsim
