#pragma once

#include <stdexcept>
#include <string>

namespace wavuniq {

/// Base class for every error raised by the library. name() is the short
/// identifier printed by the CLI on stderr.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* name() const noexcept { return "Error"; }
};

class ValidationError : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "ValidationError"; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "IoError"; }
};

/// No interval [r, b r] with b >= b_min on which the spectrum stays above
/// the threshold.
class TauberianFail : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "TauberianFail"; }
};

class DegenerateDenominator : public Error {
public:
    DegenerateDenominator(const std::string& what, double omega)
        : Error(what), omega_(omega) {}
    const char* name() const noexcept override { return "DegenerateDenominator"; }
    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

class BandCoverage : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "BandCoverage"; }
};

class DegenerateLeadingCoefficient : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "DegenerateLeadingCoefficient"; }
};

}  // namespace wavuniq
