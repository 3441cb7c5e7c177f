#pragma once

#include <stdexcept>
#include <string>

namespace nnosim {

// Base for everything this library throws on purpose. The CLI catches this
// one type and reports the category via the derived class name baked into
// the message by each call site.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad value passed by the caller (dimension mismatch, out-of-range knob, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// An object's invariant does not hold (e.g. cloud thickness outside bounds).
class StateError : public Error {
public:
    using Error::Error;
};

// Experiment configuration problems; message carries the JSON path.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Geometry that cannot be rasterized (overlaps, zero ring width, ...).
class GeometryError : public Error {
public:
    using Error::Error;
};

// Decay fit could not produce a valid time constant.
class FitError : public Error {
public:
    using Error::Error;
};

// Iterative field solve did not reach tolerance; carries the last residual.
class SolverError : public Error {
public:
    SolverError(const std::string& msg, double residual, int iterations)
        : Error(msg), residual(residual), iterations(iterations) {}
    double residual = 0.0;
    int iterations = 0;
};

// Dataset ingestion failure; message names file and line.
class IngestError : public Error {
public:
    using Error::Error;
};

// Read voltage outside the linear window of a non-volatile cell.
class ReadRangeError : public Error {
public:
    using Error::Error;
};

// A cross-validation fold would train without one of the classes.
class StratificationError : public Error {
public:
    using Error::Error;
};

}  // namespace nnosim
