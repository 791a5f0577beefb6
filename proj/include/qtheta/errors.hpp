#pragma once

#include <stdexcept>
#include <string>

namespace qtheta {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZeroSeries : Error {
    DivisionByZeroSeries() : Error("division by the zero series") {}
};

struct LogTermRequired : Error {
    LogTermRequired() : Error("antiderivative has a q^-1 term; a log q term is required") {}
};

struct NonUnitLog : Error {
    NonUnitLog() : Error("ps_log requires a unit series (prefix 0, constant term 1)") {}
};

struct FractionalNegation : Error {
    FractionalNegation() : Error("q -> -q is undefined on fractional powers of q") {}
};

struct OutOfWindow : Error {
    explicit OutOfWindow(const std::string& what) : Error("coefficient out of window: " + what) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

struct NonTerminating : Error {
    NonTerminating() : Error("Lambert spec has a numerator exponent that does not grow with n") {}
};

struct UnknownIdentity : Error {
    explicit UnknownIdentity(const std::string& id) : Error("unknown identity: " + id) {}
};

struct KindMismatch : Error {
    explicit KindMismatch(const std::string& id) : Error("identity kind mismatch: " + id) {}
};

struct PrecisionUnderflow : Error {
    explicit PrecisionUnderflow(const std::string& what) : Error(what) {}
};

struct StepTooSmall : Error {
    StepTooSmall() : Error("finite-difference step too small for the precision budget") {}
};

} // namespace qtheta
