#pragma once

#include <stdexcept>
#include <string>

namespace spinchaos {

/// Integration produced non-finite state components.
class NumericBlowupError : public std::runtime_error {
public:
    explicit NumericBlowupError(const std::string& what) : std::runtime_error(what) {}
};

/// A one-spin trajectory failed to close within t_max; signals proximity to the separatrix.
class NoClosureError : public std::runtime_error {
public:
    explicit NoClosureError(const std::string& what) : std::runtime_error(what) {}
};

/// A 1D root bracket does not contain a sign change.
class BracketError : public std::runtime_error {
public:
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

/// A fit could not be performed or failed its quality gate.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// The deviation grew past the linear-response bound within one reset interval.
class DeviationBlowupError : public std::runtime_error {
public:
    explicit DeviationBlowupError(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched or unsupported dimensions in quantum operations.
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid physical or numerical parameter.
class InvalidParameterError : public std::invalid_argument {
public:
    explicit InvalidParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// No spectral peak exceeded the detection threshold in the requested band.
class PeakNotFoundError : public std::runtime_error {
public:
    explicit PeakNotFoundError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace spinchaos
