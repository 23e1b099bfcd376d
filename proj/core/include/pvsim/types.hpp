#pragma once

namespace pvsim {

/// Irradiance and cell temperature at an instant.
struct EnvSample {
    double g = 1000.0;  ///< irradiance, W/m^2
    double t = 25.0;    ///< cell temperature, degC
    double time = 0.0;  ///< seconds
};

/// One converter/panel operating point.
///
/// `duty` is meaningful for points produced by the power stage; model-side
/// results (e.g. the true MPP, which knows no bus) report duty = 0.
struct OperatingPoint {
    double duty = 0.0;
    double v_pv = 0.0;  ///< panel voltage, V
    double i_pv = 0.0;  ///< panel current, A
    double p_pv = 0.0;  ///< panel power, W
};

}  // namespace pvsim
