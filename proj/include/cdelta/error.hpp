#pragma once

#include <stdexcept>
#include <string>

namespace cdelta {

enum class Errc {
    parse,
    validation,
    graph_mismatch,
    not_in_lprime,
    singular_matrix,
    region_too_large,
    not_rational,
    not_star_shaped,
    non_minimal_leg,
    bad_fraction,
    out_of_range,
    empty_curve,
    precondition_failed,
    not_quotient,
    no_nodes,
    internal_inconsistency,
};

const char* errc_name(Errc code);

/// Base of every error raised by the library. The code identifies the
/// failure class; the message carries the context.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

#define CDELTA_DEFINE_ERROR(Name, Code)                                                            \
    class Name : public Error {                                                                    \
    public:                                                                                        \
        explicit Name(const std::string& message) : Error(Errc::Code, message) {}                  \
    };

CDELTA_DEFINE_ERROR(ParseError, parse)
CDELTA_DEFINE_ERROR(ValidationError, validation)
CDELTA_DEFINE_ERROR(GraphMismatch, graph_mismatch)
CDELTA_DEFINE_ERROR(NotInLPrime, not_in_lprime)
CDELTA_DEFINE_ERROR(SingularMatrix, singular_matrix)
CDELTA_DEFINE_ERROR(RegionTooLarge, region_too_large)
CDELTA_DEFINE_ERROR(NotRational, not_rational)
CDELTA_DEFINE_ERROR(NotStarShaped, not_star_shaped)
CDELTA_DEFINE_ERROR(NonMinimalLeg, non_minimal_leg)
CDELTA_DEFINE_ERROR(BadFraction, bad_fraction)
CDELTA_DEFINE_ERROR(OutOfRange, out_of_range)
CDELTA_DEFINE_ERROR(EmptyCurve, empty_curve)
CDELTA_DEFINE_ERROR(PreconditionFailed, precondition_failed)
CDELTA_DEFINE_ERROR(NotQuotient, not_quotient)
CDELTA_DEFINE_ERROR(NoNodes, no_nodes)
CDELTA_DEFINE_ERROR(InternalInconsistency, internal_inconsistency)

#undef CDELTA_DEFINE_ERROR

} // namespace cdelta
