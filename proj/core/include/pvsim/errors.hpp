#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvsim {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero irradiance: open-circuit voltage and the MPP are undefined.
class NoLightError : public Error {
public:
    using Error::Error;
};

/// A root solver exhausted its iteration budget (pathological parameters).
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

class DutyOutOfRangeError : public Error {
public:
    using Error::Error;
};

/// Requested panel voltage exceeds the bus voltage; a boost stage cannot reach it.
class TargetAboveBusError : public Error {
public:
    using Error::Error;
};

/// Fractional estimator constant outside (0, 1).
class InvalidKError : public Error {
public:
    using Error::Error;
};

/// Profile sampled outside its defined time range.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

class EmptyTraceError : public Error {
public:
    using Error::Error;
};

/// A trace record has zero ideal power; tracking efficiency is undefined.
class ZeroIdealError : public Error {
public:
    using Error::Error;
};

class InsufficientSamplesError : public Error {
public:
    using Error::Error;
};

/// Fundamental amplitude is numerically zero; THD is undefined.
class ZeroFundamentalError : public Error {
public:
    using Error::Error;
};

/// Scenario/config file problem, with line and key diagnostics when known.
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, int line = 0, std::string key = {})
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line),
          key_(std::move(key)) {}

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_ = 0;
    std::string key_;
};

/// Wraps any error raised inside a simulation run with the step index.
class SimulationError : public Error {
public:
    SimulationError(std::size_t step, const std::string& what)
        : Error("simulation step " + std::to_string(step) + ": " + what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_ = 0;
};

}  // namespace pvsim
