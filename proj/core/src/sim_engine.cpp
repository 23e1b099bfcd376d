#include "pvsim/sim_engine.hpp"

#include <bit>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "pvsim/errors.hpp"

namespace pvsim {

namespace {

struct EnvKey {
    std::uint64_t g_bits;
    std::uint64_t t_bits;
    bool operator==(const EnvKey&) const = default;
};

struct EnvKeyHash {
    std::size_t operator()(const EnvKey& k) const noexcept {
        return std::hash<std::uint64_t>{}(k.g_bits * 1099511628211ull ^ k.t_bits);
    }
};

}  // namespace

std::size_t step_count(double duration, double dt) {
    // the 1e-9 backs out division noise on exact multiples of dt
    return static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
}

Trace simulate(const Scenario& sc) {
    sc.validate();

    const std::size_t n = step_count(sc.duration, sc.dt);
    auto controller = make_controller(sc.controller, sc.panel, kBootstrapDuty);

    Trace trace;
    trace.scenario_hash = scenario_fingerprint(sc);
    trace.records.reserve(n);

    // ideal power memoized per distinct (g, t); bit-keyed for exactness
    std::unordered_map<EnvKey, double, EnvKeyHash> ideal;
    auto ideal_power = [&](const EnvSample& env) {
        if (env.g <= 0.0) return 0.0;
        const EnvKey key{std::bit_cast<std::uint64_t>(env.g),
                         std::bit_cast<std::uint64_t>(env.t)};
        auto it = ideal.find(key);
        if (it == ideal.end())
            it = ideal.emplace(key, true_mpp(env, sc.panel).p_pv).first;
        return it->second;
    };

    OperatingPoint prev =
        solve_operating_point(kBootstrapDuty, sample(sc.profile, 0.0), sc.panel, sc.bus);

    for (std::size_t k = 0; k < n; ++k) {
        const double time = k * sc.dt;
        try {
            const EnvSample env = sample(sc.profile, time);
            const Measurement m{prev.v_pv, prev.i_pv, prev.p_pv, env.t, time};
            const ProbeContext plant{sc.panel, env, sc.bus};
            const ControlAction action = controller->step(m, plant);
            const OperatingPoint op =
                action.probe_op ? *action.probe_op
                                : solve_operating_point(action.duty, env, sc.panel, sc.bus);
            trace.records.push_back({time, env.g, env.t, action.duty, op.v_pv, op.i_pv,
                                     op.p_pv, ideal_power(env), action.mode});
            prev = op;
        } catch (const SimulationError&) {
            throw;
        } catch (const std::exception& e) {
            throw SimulationError(k, e.what());
        }
    }
    return trace;
}

}  // namespace pvsim
