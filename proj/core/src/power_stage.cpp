#include "pvsim/power_stage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pvsim/errors.hpp"

namespace pvsim {

void BusParams::validate() const {
    if (!(v_l > 0.0)) throw Error("bus: v_l must be > 0");
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw Error("bus: efficiency must lie in (0, 1]");
}

double panel_voltage_for_duty(double duty, const BusParams& bus) {
    if (!(duty >= 0.0 && duty <= kDutyMax))
        throw DutyOutOfRangeError("duty " + std::to_string(duty) +
                                  " outside [0, " + std::to_string(kDutyMax) + "]");
    return (1.0 - duty) * bus.v_l;
}

double duty_for_target_voltage(double v_target, const BusParams& bus) {
    if (v_target > bus.v_l)
        throw TargetAboveBusError("target " + std::to_string(v_target) +
                                  " V above bus " + std::to_string(bus.v_l) + " V");
    return std::clamp(1.0 - v_target / bus.v_l, 0.0, kDutyMax);
}

OperatingPoint solve_operating_point(double duty, const EnvSample& env,
                                     const PanelParams& panel, const BusParams& bus) {
    OperatingPoint op;
    op.duty = duty;
    op.v_pv = panel_voltage_for_duty(duty, bus);
    if (env.g <= 0.0) {
        op.i_pv = 0.0;  // dark panel sources nothing
    } else {
        const double voc = open_circuit_voltage(env, panel);
        op.i_pv = op.v_pv >= voc ? 0.0
                                 : std::max(panel_current(op.v_pv, env, panel), 0.0);
    }
    op.p_pv = op.v_pv * op.i_pv;
    return op;
}

double bus_power(const OperatingPoint& op, const BusParams& bus) {
    return bus.efficiency * op.p_pv;
}

}  // namespace pvsim
