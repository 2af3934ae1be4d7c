#ifndef SUBDIV_ERROR_HPP
#define SUBDIV_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace subdiv {

enum class ErrorCode
{
    EmptyInput,
    DimOutOfRange,
    SimplexNotFound,
    InvalidSubdivision,
    OrientationConflict,
    DisconnectedParty,
    ComplexMismatch,
    MetricNotPD,
    ConstructionFailed,
    DependentHyperplanes,
    ModeUnsupported,
    ZeroPolynomial,
    NoLift,
    Disagreement,
    IneligibleSimplex,
    BadDescriptor,
    Singular,
    Parse,
};

std::string_view to_string(ErrorCode code);

/**
 * Library error.  Every failure raised by the library carries one of the
 * codes above so callers (and the CLI) can map it to an exit status.
 */
class Error : public std::runtime_error
{
    public:
        Error(ErrorCode code, const std::string& what)
            : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
        {
        }

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
};

}   // namespace subdiv

#endif
