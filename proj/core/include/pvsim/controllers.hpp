#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pvsim/panel.hpp"
#include "pvsim/power_stage.hpp"
#include "pvsim/types.hpp"

namespace pvsim {

/// What a tracker sees each control period. Electrical quantities carry one
/// step of sensing delay; temperature and time are current.
struct Measurement {
    double v_pv = 0.0;
    double i_pv = 0.0;
    double p_pv = 0.0;
    double t = 25.0;    ///< cell temperature, degC
    double time = 0.0;  ///< seconds
};

/// Which branch produced the last duty command.
enum class ControlMode {
    Calc,   ///< coarse operating-point calculation from primary values
    Fine,   ///< hill-climbing adjustment
    Probe,  ///< open/short-circuit measurement step (zero production)
    Hold,   ///< duty held unchanged
};

/// Per-algorithm memory shared by the step rules below.
struct ControllerState {
    double last_duty = 0.5;
    double last_power = 0.0;
    double last_temp = 0.0;
    double last_v = 0.0;  ///< previous panel voltage (incremental-conductance memory)
    double last_i = 0.0;
    int perturb_dir = +1;
    ControlMode mode = ControlMode::Calc;
    bool primed = false;  ///< set once the first step has run
};

/// Primary values of the two-loop tracker: datasheet constants plus the
/// operator-chosen fractional constant and loop-selection threshold.
struct HybridConfig {
    double k = 0.75;           ///< fractional open-circuit-voltage constant
    double voc_n = 0.0;        ///< datasheet Voc at STC, V
    double kv = 0.0;           ///< Voc temperature coefficient, V/degC
    double t_threshold = 1.0;  ///< degC change that re-triggers the calc loop
    double fine_step = 0.005;  ///< duty increment of the adjustment loop

    /// Throws Error on hard violations; returns human-readable warnings for
    /// soft ones (k outside the customary [0.7, 0.8] band).
    std::vector<std::string> validate() const;
};

/// Vmpp estimate k * Voc. Throws InvalidKError unless k is in (0, 1).
double estimate_vmpp_fractional_voc(double voc, double k);

/// Impp estimate kk * Isc. Throws InvalidKError unless kk is in (0, 1).
double estimate_impp_fractional_isc(double isc, double kk);

/// Datasheet Voc linearized to temperature t: voc_n + kv * (t - 25).
double temperature_corrected_voc(double t, const HybridConfig& cfg);

/// Perturb-and-observe rule: keep the perturb direction while power rises,
/// reverse it otherwise (ties keep the direction), then step the duty.
double po_step(ControllerState& st, const Measurement& m, double step);

/// Incremental-conductance rule on the dI/dV = -I/V condition; holds the duty
/// inside the `eps` conductance band and when two samples are identical.
double inc_cond_step(ControllerState& st, const Measurement& m, double step, double eps);

/// Two-loop step: re-calculates the operating point from the temperature-
/// corrected Voc whenever the temperature moved more than t_threshold since
/// the last calculation (and on the first call); otherwise fine-tunes with
/// the perturb-and-observe rule at fine_step.
double hybrid_step(ControllerState& st, const Measurement& m, const HybridConfig& cfg,
                   const BusParams& bus);

/// Plant access granted to controllers for offline probe steps.
struct ProbeContext {
    const PanelParams& panel;
    const EnvSample& env;
    const BusParams& bus;

    double open_circuit_voltage() const;   ///< throws NoLightError at g = 0
    double short_circuit_current() const;  ///< throws NoLightError at g = 0
    double current_at_duty(double duty) const;
};

/// One duty command. A set probe_op means the panel spent this step pinned at
/// an open/short-circuit probe point and produced nothing.
struct ControlAction {
    double duty = 0.0;
    ControlMode mode = ControlMode::Fine;
    std::optional<OperatingPoint> probe_op;
};

class Controller {
public:
    virtual ~Controller() = default;
    virtual ControlAction step(const Measurement& m, const ProbeContext& plant) = 0;
    virtual std::string_view name() const = 0;
};

/// Controller selection plus every per-algorithm knob, as read from the
/// scenario file. Unused knobs are ignored by each algorithm.
struct ControllerSpec {
    std::string name = "hybrid";
    double k = 0.75;             ///< fractional Voc constant (hybrid, frac_voc)
    double kk = 0.85;            ///< fractional Isc constant (frac_isc)
    double t_threshold = 1.0;    ///< hybrid loop-selection threshold, degC
    double fine_step = 0.005;    ///< hybrid adjustment-loop duty increment
    double step = 0.01;          ///< P&O / IncCond duty increment
    double eps = 0.02;           ///< IncCond conductance tolerance, A/V
    double probe_interval = 5.0; ///< offline probe cadence, s
    double fixed_duty = 0.5;     ///< pinned duty of the "fixed" test controller
};

/// Names accepted in scenario files and on the command line.
const std::vector<std::string>& controller_names();

/// Builds a controller; throws ConfigError for unknown names. `initial_duty`
/// seeds the hill-climbing memory (the simulator's bootstrap duty).
std::unique_ptr<Controller> make_controller(const ControllerSpec& spec,
                                            const PanelParams& panel,
                                            double initial_duty = 0.5);

const char* mode_label(ControlMode mode);

}  // namespace pvsim
