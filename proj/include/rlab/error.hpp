#pragma once

#include <stdexcept>
#include <string>

namespace rlab
{
    enum class ErrorKind
    {
        CycleFound,
        SizeOverflow,
        TooLarge,
        LayeringMismatch,
        InfeasibleDegree,
        HypothesisViolation,
        PreconditionViolated,
        PreconditionUnverified,
        MonotonicityViolated,
        NotSubset,
        DensityTooLow,
        RetriesExhausted,
        StructureFailed,
        TooSmall,
        IndexOutOfRange,
        ResampleBudgetExhausted,
        LayerFailed,
        InfeasibleParams,
        PartialLayers,
        ParseError,
        IoError
    };

    auto error_kind_name(ErrorKind kind) -> const char *;

    class Error : public std::runtime_error
    {
        public:
            Error(ErrorKind kind, const std::string & message);

            auto kind() const -> ErrorKind
            {
                return _kind;
            }

        private:
            ErrorKind _kind;
    };

    [[noreturn]] auto fail(ErrorKind kind, const std::string & message) -> void;

    inline auto require(bool condition, ErrorKind kind, const std::string & message) -> void
    {
        if (! condition)
            fail(kind, message);
    }
}
