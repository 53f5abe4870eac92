#pragma once

#include <stdexcept>
#include <string>

namespace curve4d {

/// Base class for all library errors. `kind()` is a stable identifier used by
/// the CLI for diagnostics and exit-code mapping; `input` distinguishes bad
/// user input from numerical failures detected mid-pipeline.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message, bool input = false)
        : std::runtime_error(message), kind_(std::move(kind)), input_(input) {}

    const std::string& kind() const noexcept { return kind_; }
    bool is_input_error() const noexcept { return input_; }

private:
    std::string kind_;
    bool input_;
};

// --- expression / input errors -------------------------------------------

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& expected, const std::string& found)
        : Error("SyntaxError",
                "syntax error at offset " + std::to_string(offset) + ": expected " + expected +
                    ", found " + found,
                true),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class ArityError : public Error {
public:
    ArityError(std::size_t offset, const std::string& message)
        : Error("ArityError", message + " (at offset " + std::to_string(offset) + ")", true),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class DomainProbeError : public Error {
public:
    DomainProbeError(int coordinate, double s, const std::string& detail)
        : Error("DomainProbeError",
                "coordinate " + std::to_string(coordinate + 1) + " is not finite at s = " +
                    std::to_string(s) + ": " + detail,
                true) {}
};

class UnknownCurveError : public Error {
public:
    explicit UnknownCurveError(const std::string& name)
        : Error("UnknownCurveError",
                "unknown builtin curve '" + name +
                    "'; valid names: example1, example2, circle, line, helix3",
                true) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("ParseError", "line " + std::to_string(line) + ": " + message, true) {}
};

class NonMonotoneParamError : public Error {
public:
    NonMonotoneParamError(std::size_t line, double t)
        : Error("NonMonotoneParamError",
                "parameter values must be strictly increasing; violation at line " +
                    std::to_string(line) + " (t = " + std::to_string(t) + ")",
                true) {}
};

class TooFewSamplesError : public Error {
public:
    TooFewSamplesError(std::size_t got, std::size_t need)
        : Error("TooFewSamplesError",
                "need at least " + std::to_string(need) + " samples, got " + std::to_string(got),
                true) {}
};

// --- numerical errors ------------------------------------------------------

class DomainError : public Error {
public:
    DomainError(const std::string& function, double value)
        : Error("DomainError",
                function + " applied outside its domain (argument value " + std::to_string(value) +
                    ")") {}
};

class StationaryPointError : public Error {
public:
    explicit StationaryPointError(double t)
        : Error("StationaryPointError",
                "curve speed vanishes at t = " + std::to_string(t) +
                    "; frames are undefined there") {}
};

class DegenerateFrameError : public Error {
public:
    DegenerateFrameError(int level, double s, double residual)
        : Error("DegenerateFrameError",
                "Frenet frame does not exist at s = " + std::to_string(s) +
                    ": Gram-Schmidt residual at level " + std::to_string(level) + " is " +
                    std::to_string(residual)),
          level_(level) {}

    int level() const noexcept { return level_; }

private:
    int level_;
};

class MismatchedSeriesError : public Error {
public:
    explicit MismatchedSeriesError(const std::string& detail)
        : Error("MismatchedSeriesError", "series are not aligned: " + detail) {}
};

class NotUnitError : public Error {
public:
    explicit NotUnitError(double norm)
        : Error("NotUnitError",
                "tangent must be a unit vector (norm is " + std::to_string(norm) + ")") {}
};

class HintMismatchError : public Error {
public:
    explicit HintMismatchError(double deviation)
        : Error("HintMismatchError",
                "hint frame tangent differs from the requested tangent by " +
                    std::to_string(deviation)) {}
};

class ZeroStepError : public Error {
public:
    ZeroStepError(std::size_t index, double t)
        : Error("ZeroStepError",
                "consecutive samples coincide at index " + std::to_string(index) +
                    " (t = " + std::to_string(t) + ")") {}
};

class ProfileDomainError : public Error {
public:
    ProfileDomainError(double s, double lo, double hi)
        : Error("ProfileDomainError",
                "arclength " + std::to_string(s) + " exits the profile domain [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]") {}
};

class TangentMismatchError : public Error {
public:
    explicit TangentMismatchError(double dot)
        : Error("TangentMismatchError",
                "frames do not share a tangent (inner product " + std::to_string(dot) + ")") {}
};

class NotRotationError : public Error {
public:
    explicit NotRotationError(const std::string& detail)
        : Error("NotRotationError", "matrix is not a proper rotation: " + detail) {}
};

class DegenerateGeometryError : public Error {
public:
    explicit DegenerateGeometryError(const std::string& detail)
        : Error("DegenerateGeometryError", "sphere fit is underdetermined: " + detail) {}
};

} // namespace curve4d
