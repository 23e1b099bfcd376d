#include "pvsim/controllers.hpp"

#include <algorithm>
#include <cmath>

#include "pvsim/errors.hpp"

namespace pvsim {

namespace {

double clamp_duty(double duty) {
    return std::clamp(duty, 0.0, kDutyMax);
}

void require_fraction(double k, const char* what) {
    if (!(k > 0.0 && k < 1.0))
        throw InvalidKError(std::string(what) + " must lie in (0, 1)");
}

}  // namespace

std::vector<std::string> HybridConfig::validate() const {
    if (!(t_threshold > 0.0)) throw Error("hybrid: t_threshold must be > 0");
    if (!(fine_step > 0.0 && fine_step <= 0.1))
        throw Error("hybrid: fine_step must lie in (0, 0.1]");
    require_fraction(k, "hybrid k");
    std::vector<std::string> warnings;
    if (k < 0.7 || k > 0.8)
        warnings.push_back("hybrid k outside the customary [0.7, 0.8] band");
    return warnings;
}

double estimate_vmpp_fractional_voc(double voc, double k) {
    require_fraction(k, "fractional-Voc constant");
    return k * voc;
}

double estimate_impp_fractional_isc(double isc, double kk) {
    require_fraction(kk, "fractional-Isc constant");
    return kk * isc;
}

double temperature_corrected_voc(double t, const HybridConfig& cfg) {
    return cfg.voc_n + cfg.kv * (t - PanelParams::t_ref);
}

double po_step(ControllerState& st, const Measurement& m, double step) {
    if (m.p_pv < st.last_power) st.perturb_dir = -st.perturb_dir;
    const double duty = clamp_duty(st.last_duty + st.perturb_dir * step);
    st.last_power = m.p_pv;
    st.last_duty = duty;
    st.primed = true;
    st.mode = ControlMode::Fine;
    return duty;
}

double inc_cond_step(ControllerState& st, const Measurement& m, double step, double eps) {
    double duty = st.last_duty;
    if (!st.primed) {
        // Seed perturbation: without it, consecutive identical samples would
        // pin the tracker at its start duty under constant conditions.
        duty = clamp_duty(duty - step);
    } else {
        const double dv = m.v_pv - st.last_v;
        const double di = m.i_pv - st.last_i;
        if (dv == 0.0) {
            if (di > 0.0)
                duty = clamp_duty(duty - step);
            else if (di < 0.0)
                duty = clamp_duty(duty + step);
            // di == 0: no information, hold
        } else if (m.v_pv <= 0.0) {
            duty = clamp_duty(duty - step);  // collapsed voltage: back off
        } else {
            const double g_inc = di / dv;
            const double g_op = m.i_pv / m.v_pv;
            if (std::abs(g_inc + g_op) <= eps) {
                // at the MPP: hold
            } else if (g_inc > -g_op) {
                duty = clamp_duty(duty - step);  // left of the MPP: raise voltage
            } else {
                duty = clamp_duty(duty + step);
            }
        }
    }
    st.last_v = m.v_pv;
    st.last_i = m.i_pv;
    st.last_power = m.p_pv;
    st.last_duty = duty;
    st.primed = true;
    st.mode = ControlMode::Fine;
    return duty;
}

double hybrid_step(ControllerState& st, const Measurement& m, const HybridConfig& cfg,
                   const BusParams& bus) {
    if (!st.primed || std::abs(m.t - st.last_temp) > cfg.t_threshold) {
        const double voc_t = temperature_corrected_voc(m.t, cfg);
        const double v_est = estimate_vmpp_fractional_voc(voc_t, cfg.k);
        const double duty = duty_for_target_voltage(v_est, bus);
        st.last_temp = m.t;
        st.last_power = m.p_pv;
        st.last_duty = duty;
        st.primed = true;
        st.mode = ControlMode::Calc;
        return duty;
    }
    const double duty = po_step(st, m, cfg.fine_step);
    st.mode = ControlMode::Fine;
    return duty;
}

double ProbeContext::open_circuit_voltage() const {
    return pvsim::open_circuit_voltage(env, panel);
}

double ProbeContext::short_circuit_current() const {
    if (env.g <= 0.0) throw NoLightError("short-circuit probe at zero irradiance");
    return panel_current(0.0, env, panel);
}

double ProbeContext::current_at_duty(double duty) const {
    return solve_operating_point(duty, env, panel, bus).i_pv;
}

namespace {

class FixedController final : public Controller {
public:
    explicit FixedController(double duty) : duty_(clamp_duty(duty)) {}

    ControlAction step(const Measurement&, const ProbeContext&) override {
        return {duty_, ControlMode::Hold, std::nullopt};
    }
    std::string_view name() const override { return "fixed"; }

private:
    double duty_;
};

class PoController final : public Controller {
public:
    PoController(double step, double initial_duty) : step_(step) {
        st_.last_duty = clamp_duty(initial_duty);
    }

    ControlAction step(const Measurement& m, const ProbeContext&) override {
        return {po_step(st_, m, step_), ControlMode::Fine, std::nullopt};
    }
    std::string_view name() const override { return "po"; }

private:
    double step_;
    ControllerState st_;
};

class IncCondController final : public Controller {
public:
    IncCondController(double step, double eps, double initial_duty)
        : step_(step), eps_(eps) {
        st_.last_duty = clamp_duty(initial_duty);
    }

    ControlAction step(const Measurement& m, const ProbeContext&) override {
        return {inc_cond_step(st_, m, step_, eps_), ControlMode::Fine, std::nullopt};
    }
    std::string_view name() const override { return "inccond"; }

private:
    double step_;
    double eps_;
    ControllerState st_;
};

class HybridController final : public Controller {
public:
    HybridController(HybridConfig cfg, double initial_duty) : cfg_(cfg) {
        cfg_.validate();
        st_.last_duty = clamp_duty(initial_duty);
    }

    ControlAction step(const Measurement& m, const ProbeContext& plant) override {
        const double duty = hybrid_step(st_, m, cfg_, plant.bus);
        return {duty, st_.mode, std::nullopt};
    }
    std::string_view name() const override { return "hybrid"; }

private:
    HybridConfig cfg_;
    ControllerState st_;
};

class FractionalVocController final : public Controller {
public:
    FractionalVocController(double k, double interval, double initial_duty)
        : k_(k), interval_(interval) {
        require_fraction(k_, "fractional-Voc constant");
        st_.last_duty = clamp_duty(initial_duty);
    }

    ControlAction step(const Measurement& m, const ProbeContext& plant) override {
        if (m.time >= next_probe_) {
            next_probe_ += interval_;
            const double voc = plant.open_circuit_voltage();
            const double duty =
                duty_for_target_voltage(estimate_vmpp_fractional_voc(voc, k_), plant.bus);
            st_.last_duty = duty;
            st_.mode = ControlMode::Probe;
            // load disconnected for the probe: the panel idles at open circuit
            return {duty, ControlMode::Probe, OperatingPoint{duty, voc, 0.0, 0.0}};
        }
        st_.mode = ControlMode::Hold;
        return {st_.last_duty, ControlMode::Hold, std::nullopt};
    }
    std::string_view name() const override { return "frac_voc"; }

private:
    double k_;
    double interval_;
    double next_probe_ = 0.0;
    ControllerState st_;
};

class FractionalIscController final : public Controller {
public:
    FractionalIscController(double kk, double interval, double initial_duty)
        : kk_(kk), interval_(interval) {
        require_fraction(kk_, "fractional-Isc constant");
        st_.last_duty = clamp_duty(initial_duty);
    }

    ControlAction step(const Measurement& m, const ProbeContext& plant) override {
        if (m.time >= next_probe_) {
            next_probe_ += interval_;
            const double isc = plant.short_circuit_current();
            const double duty =
                duty_for_current(estimate_impp_fractional_isc(isc, kk_), plant);
            st_.last_duty = duty;
            st_.mode = ControlMode::Probe;
            // probe shorts the panel: full Isc, zero voltage, zero power
            return {duty, ControlMode::Probe, OperatingPoint{duty, 0.0, isc, 0.0}};
        }
        st_.mode = ControlMode::Hold;
        return {st_.last_duty, ControlMode::Hold, std::nullopt};
    }
    std::string_view name() const override { return "frac_isc"; }

private:
    // Panel current grows with duty (the commanded voltage falls), so the
    // duty matching a target current is found by bisection.
    static double duty_for_current(double i_target, const ProbeContext& plant) {
        double lo = 0.0;
        double hi = kDutyMax;
        if (plant.current_at_duty(hi) <= i_target) return hi;
        for (int iter = 0; iter < 60; ++iter) {
            const double mid = 0.5 * (lo + hi);
            (plant.current_at_duty(mid) < i_target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    double kk_;
    double interval_;
    double next_probe_ = 0.0;
    ControllerState st_;
};

}  // namespace

const std::vector<std::string>& controller_names() {
    static const std::vector<std::string> names = {"hybrid", "po", "inccond",
                                                   "frac_voc", "frac_isc"};
    return names;
}

std::unique_ptr<Controller> make_controller(const ControllerSpec& spec,
                                            const PanelParams& panel,
                                            double initial_duty) {
    if (spec.name == "hybrid") {
        HybridConfig cfg;
        cfg.k = spec.k;
        cfg.voc_n = panel.voc_n;
        cfg.kv = panel.kv;
        cfg.t_threshold = spec.t_threshold;
        cfg.fine_step = spec.fine_step;
        return std::make_unique<HybridController>(cfg, initial_duty);
    }
    if (spec.name == "po") return std::make_unique<PoController>(spec.step, initial_duty);
    if (spec.name == "inccond")
        return std::make_unique<IncCondController>(spec.step, spec.eps, initial_duty);
    if (spec.name == "frac_voc")
        return std::make_unique<FractionalVocController>(spec.k, spec.probe_interval,
                                                         initial_duty);
    if (spec.name == "frac_isc")
        return std::make_unique<FractionalIscController>(spec.kk, spec.probe_interval,
                                                         initial_duty);
    if (spec.name == "fixed") return std::make_unique<FixedController>(spec.fixed_duty);

    std::string names;
    for (const auto& n : controller_names()) {
        if (!names.empty()) names += ", ";
        names += n;
    }
    throw ConfigError("unknown controller '" + spec.name + "'; valid names: " + names,
                      0, "name");
}

const char* mode_label(ControlMode mode) {
    switch (mode) {
        case ControlMode::Calc: return "calc";
        case ControlMode::Fine: return "fine";
        case ControlMode::Probe: return "probe";
        case ControlMode::Hold: return "hold";
    }
    return "?";
}

}  // namespace pvsim
