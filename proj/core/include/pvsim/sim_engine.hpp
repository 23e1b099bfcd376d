#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pvsim/controllers.hpp"
#include "pvsim/environment.hpp"

namespace pvsim {

/// Duty the plant idles at before the controller's first command.
constexpr double kBootstrapDuty = 0.5;

struct TraceRecord {
    double time = 0.0;
    double g = 0.0;
    double t = 0.0;
    double duty = 0.0;
    double v_pv = 0.0;
    double i_pv = 0.0;
    double p_pv = 0.0;
    double p_ideal = 0.0;  ///< true MPP power at this record's environment
    ControlMode mode = ControlMode::Fine;
};

struct Trace {
    std::vector<TraceRecord> records;
    std::uint64_t scenario_hash = 0;
};

/// Number of records a run produces: ceil(duration / dt), guarded against
/// division noise on exact multiples.
std::size_t step_count(double duration, double dt);

/// Runs the closed loop environment -> panel -> converter -> controller for
/// the scenario's whole duration. The controller sees the previous step's
/// operating point (one-step sensing delay) together with the current
/// temperature and time. Errors raised mid-run are rethrown as
/// SimulationError carrying the step index.
Trace simulate(const Scenario& scenario);

}  // namespace pvsim
