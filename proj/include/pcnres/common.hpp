#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcnres {

using NodeIndex = std::uint32_t;
using Sat = std::int64_t;       // satoshi
using MilliSat = std::int64_t;  // millisatoshi

inline constexpr const char* kVersion = "0.1.0";

// Selects between the OpenMP kernels and the serial reference path.
// Both produce identical results for integer-valued reductions; real-valued
// reductions agree to rounding (see kernels.hpp).
enum class Exec { serial, parallel };

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class UnknownIdError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int iterations)
        : Error(what), iterations_(iterations) {}
    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

// An attack plan whose recorded costs no longer match the graph it is run on.
class StalePlanError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

}  // namespace pcnres
