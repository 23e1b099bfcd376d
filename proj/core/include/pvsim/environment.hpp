#pragma once

#include <cstdint>
#include <vector>

#include "pvsim/controllers.hpp"
#include "pvsim/panel.hpp"
#include "pvsim/power_stage.hpp"
#include "pvsim/types.hpp"

namespace pvsim {

enum class ProfileKind { Constant, Step, Ramp, Piecewise };

/// Interpolation toward the next segment; only the piecewise kind reads it.
enum class SegmentInterp { Hold, Linear };

struct ProfileSegment {
    double start = 0.0;  ///< seconds
    double g = 1000.0;   ///< W/m^2
    double t = 25.0;     ///< degC
    SegmentInterp interp = SegmentInterp::Hold;
};

/// Time-indexed irradiance/temperature profile.
struct Profile {
    ProfileKind kind = ProfileKind::Constant;
    std::vector<ProfileSegment> segments;

    void validate() const;
};

/// Environment at `time`. Constant profiles ignore time; step profiles hold
/// each segment's values with boundaries belonging to the newer segment; ramp
/// profiles interpolate linearly between segment points; piecewise profiles
/// follow each segment's own rule. All kinds hold the last segment's values
/// beyond its start. Throws OutOfRangeError for negative time.
EnvSample sample(const Profile& profile, double time);

/// A complete simulation description.
struct Scenario {
    PanelParams panel;
    BusParams bus;
    Profile profile;
    ControllerSpec controller;
    double duration = 5.0;  ///< seconds
    double dt = 0.01;       ///< control/simulation period, seconds

    void validate() const;
};

/// Stable 64-bit fingerprint of every scenario parameter, for provenance.
std::uint64_t scenario_fingerprint(const Scenario& scenario);

/// The four canonical scenarios shipped with the project, keyed by name:
/// stc, irradiance_step, temperature_step, combined_ramp. They match the
/// config files under scenarios/.
std::vector<std::pair<std::string, Scenario>> canonical_scenarios();

}  // namespace pvsim
