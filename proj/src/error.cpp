#include <rlab/error.hpp>

namespace rlab
{
    auto error_kind_name(ErrorKind kind) -> const char *
    {
        switch (kind) {
            case ErrorKind::CycleFound:              return "CycleFound";
            case ErrorKind::SizeOverflow:            return "SizeOverflow";
            case ErrorKind::TooLarge:                return "TooLarge";
            case ErrorKind::LayeringMismatch:        return "LayeringMismatch";
            case ErrorKind::InfeasibleDegree:        return "InfeasibleDegree";
            case ErrorKind::HypothesisViolation:     return "HypothesisViolation";
            case ErrorKind::PreconditionViolated:    return "PreconditionViolated";
            case ErrorKind::PreconditionUnverified:  return "PreconditionUnverified";
            case ErrorKind::MonotonicityViolated:    return "MonotonicityViolated";
            case ErrorKind::NotSubset:               return "NotSubset";
            case ErrorKind::DensityTooLow:           return "DensityTooLow";
            case ErrorKind::RetriesExhausted:        return "RetriesExhausted";
            case ErrorKind::StructureFailed:         return "StructureFailed";
            case ErrorKind::TooSmall:                return "TooSmall";
            case ErrorKind::IndexOutOfRange:         return "IndexOutOfRange";
            case ErrorKind::ResampleBudgetExhausted: return "ResampleBudgetExhausted";
            case ErrorKind::LayerFailed:             return "LayerFailed";
            case ErrorKind::InfeasibleParams:        return "InfeasibleParams";
            case ErrorKind::PartialLayers:           return "PartialLayers";
            case ErrorKind::ParseError:              return "ParseError";
            case ErrorKind::IoError:                 return "IoError";
        }
        return "Unknown";
    }

    Error::Error(ErrorKind kind, const std::string & message) :
        std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        _kind(kind)
    {
    }

    auto fail(ErrorKind kind, const std::string & message) -> void
    {
        throw Error(kind, message);
    }
}
