#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace skin {

// Base for every failure of a numerical invariant. Carries the module that
// detected it and the tolerance that was violated so callers can report both.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string module, const std::string& what, double tolerance = 0.0)
        : std::runtime_error(module + ": " + what),
          module_(std::move(module)),
          tolerance_(tolerance) {}

    const std::string& module() const noexcept { return module_; }
    double tolerance() const noexcept { return tolerance_; }

private:
    std::string module_;
    double tolerance_;
};

#define SKIN_DEFINE_ERROR(Name)                  \
    class Name : public NumericalError {         \
    public:                                      \
        using NumericalError::NumericalError;    \
    };

SKIN_DEFINE_ERROR(PairingFailure)
SKIN_DEFINE_ERROR(NormalizationFailure)
SKIN_DEFINE_ERROR(UnsupportedRegime)
SKIN_DEFINE_ERROR(ResidueTooLarge)
SKIN_DEFINE_ERROR(UnstableDrift)
SKIN_DEFINE_ERROR(SizeLimit)
SKIN_DEFINE_ERROR(CARViolation)

#undef SKIN_DEFINE_ERROR

}  // namespace skin
