#include "pvsim/panel.hpp"

#include <algorithm>
#include <cmath>

#include "pvsim/errors.hpp"

namespace pvsim {

namespace {

constexpr double kBoltzmann = 1.380649e-23;   // J/K
constexpr double kElectronCharge = 1.602176634e-19;  // C
constexpr double kCelsiusToKelvin = 273.15;

constexpr double kCurrentTol = 1e-9;    // A
constexpr int kNewtonMaxIter = 100;
constexpr int kBisectMaxIter = 200;
constexpr double kExpArgMax = 500.0;    // keeps exp() finite; sign information survives

// n_series * ideality * V_t: the diode exponent scale for the whole string.
double string_thermal_voltage(double t_c, const PanelParams& p) {
    return p.n_series * p.ideality * thermal_voltage(t_c);
}

double voc_linear(double t_c, const PanelParams& p) {
    return p.voc_n + p.kv * (t_c - PanelParams::t_ref);
}

double guarded_exp(double arg) {
    return std::exp(std::min(arg, kExpArgMax));
}

// Single-diode residual f(i) = i_ph - i_d - i_sh - i. Strictly decreasing in i,
// so the terminal current is its unique root.
double residual(double i, double v, double iph, double i0, double nvt,
                const PanelParams& p) {
    const double vd = v + i * p.r_s;
    return iph - i0 * (guarded_exp(vd / nvt) - 1.0) - vd / p.r_sh - i;
}

}  // namespace

void PanelParams::validate() const {
    if (!(voc_n > 0.0)) throw Error("panel: voc_n must be > 0");
    if (!(isc_n > 0.0)) throw Error("panel: isc_n must be > 0");
    if (n_series < 1) throw Error("panel: n_series must be >= 1");
    if (!(ideality >= 1.0 && ideality <= 2.0))
        throw Error("panel: ideality must lie in [1, 2]");
    if (!(r_s >= 0.0)) throw Error("panel: r_s must be >= 0");
    if (!(r_sh > 0.0)) throw Error("panel: r_sh must be > 0");
    if (!(isc_n > voc_n / r_sh))
        throw Error("panel: shunt leakage exceeds short-circuit current");
}

PanelParams reference_panel() {
    PanelParams p;
    p.voc_n = 36.0;
    p.isc_n = 8.4;
    p.kv = -0.123;
    p.ki = 0.0032;
    p.n_series = 60;
    p.ideality = 1.8;
    p.r_s = 0.3;
    p.r_sh = 100.0;
    return p;
}

double thermal_voltage(double t_c) {
    return kBoltzmann * (t_c + kCelsiusToKelvin) / kElectronCharge;
}

double photocurrent(const EnvSample& env, const PanelParams& p) {
    const double isc_t = p.isc_n + p.ki * (env.t - PanelParams::t_ref);
    return std::max(isc_t, 0.0) * env.g / PanelParams::g_ref;
}

double saturation_current(double t_c, const PanelParams& p) {
    const double voc_t = voc_linear(t_c, p);
    if (!(voc_t > 0.0))
        throw Error("panel: temperature drives the linearized Voc to zero");
    const double iph_ref = p.isc_n + p.ki * (t_c - PanelParams::t_ref);
    return (iph_ref - voc_t / p.r_sh) / std::expm1(voc_t / string_thermal_voltage(t_c, p));
}

double panel_current(double v, const EnvSample& env, const PanelParams& p) {
    const double iph = photocurrent(env, p);
    const double i0 = saturation_current(env.t, p);
    const double nvt = string_thermal_voltage(env.t, p);

    // Newton on the current with the analytic derivative; the photocurrent is
    // a good starting point everywhere below Voc. Roots outside the physical
    // bracket (deep reverse conduction) are rejected via the bisection path.
    double i = iph;
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
        const double vd = v + i * p.r_s;
        const double ex = guarded_exp(vd / nvt);
        const double f = iph - i0 * (ex - 1.0) - vd / p.r_sh - i;
        if (std::abs(f) < kCurrentTol) {
            if (i >= -p.isc_n && i <= 2.0 * p.isc_n) return i;
            break;
        }
        const double df = -i0 * ex * p.r_s / nvt - p.r_s / p.r_sh - 1.0;
        const double next = i - f / df;
        if (!std::isfinite(next)) break;
        i = next;
    }

    // Bisection fallback on the fixed bracket.
    double lo = -p.isc_n;
    double hi = 2.0 * p.isc_n;
    if (residual(lo, v, iph, i0, nvt, p) < 0.0 || residual(hi, v, iph, i0, nvt, p) > 0.0)
        throw NonConvergenceError("panel_current: root outside [-isc_n, 2*isc_n]");
    for (int iter = 0; iter < kBisectMaxIter; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f = residual(mid, v, iph, i0, nvt, p);
        if (std::abs(f) < kCurrentTol) return mid;
        (f > 0.0 ? lo : hi) = mid;
    }
    throw NonConvergenceError("panel_current: bisection exhausted its budget");
}

double open_circuit_voltage(const EnvSample& env, const PanelParams& p) {
    if (env.g <= 0.0) throw NoLightError("open_circuit_voltage: zero irradiance");

    // At zero terminal current the diode equation is explicit in v, and its
    // sign tells which side of Voc a voltage sits on. Bisect that directly.
    const double iph = photocurrent(env, p);
    const double i0 = saturation_current(env.t, p);
    const double nvt = string_thermal_voltage(env.t, p);
    auto current_sign = [&](double v) {
        return iph - i0 * std::expm1(std::min(v / nvt, kExpArgMax)) - v / p.r_sh;
    };

    double hi = std::max(p.voc_n * 1.2, voc_linear(env.t, p) + 5.0);
    int grow = 0;
    while (current_sign(hi) > 0.0) {
        hi *= 1.25;
        if (++grow > 40)
            throw NonConvergenceError("open_circuit_voltage: no bracket found");
    }
    double lo = 0.0;
    for (int iter = 0; iter < kBisectMaxIter; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (current_sign(mid) > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-10 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

OperatingPoint true_mpp(const EnvSample& env, const PanelParams& p) {
    if (env.g <= 0.0) throw NoLightError("true_mpp: zero irradiance");

    const double voc = open_circuit_voltage(env, p);
    auto power = [&](double v) { return v * panel_current(v, env, p); };

    constexpr int kScanPoints = 1000;
    double best_v = 0.0;
    double best_p = 0.0;
    int best_idx = 0;
    for (int j = 0; j < kScanPoints; ++j) {
        const double v = voc * j / (kScanPoints - 1);
        const double pw = power(v);
        if (pw > best_p) {
            best_p = pw;
            best_v = v;
            best_idx = j;
        }
    }

    // Golden-section refinement inside the bracketing scan cells.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = voc * std::max(best_idx - 1, 0) / (kScanPoints - 1);
    double b = voc * std::min(best_idx + 1, kScanPoints - 1) / (kScanPoints - 1);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = power(c);
    double fd = power(d);
    while (b - a > 1e-7 * voc) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = power(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = power(d);
        }
    }
    const double v_ref = fc > fd ? c : d;
    const double p_ref = std::max(fc, fd);
    if (p_ref > best_p) {
        best_v = v_ref;
        best_p = p_ref;
    }

    OperatingPoint mpp;
    mpp.duty = 0.0;
    mpp.v_pv = best_v;
    mpp.i_pv = panel_current(best_v, env, p);
    mpp.p_pv = best_p;
    return mpp;
}

}  // namespace pvsim
