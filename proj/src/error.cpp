#include "tterel/error.hpp"

namespace tterel {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::EmptyPathSets: return "EmptyPathSets";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::IrrelevantComponent: return "IrrelevantComponent";
        case Errc::TooManyPathSets: return "TooManyPathSets";
        case Errc::InvalidK: return "InvalidK";
        case Errc::ParamOutOfRange: return "ParamOutOfRange";
        case Errc::DomainError: return "DomainError";
        case Errc::NegativeTime: return "NegativeTime";
        case Errc::EmptySet: return "EmptySet";
        case Errc::NotIdenticallyDistributed: return "NotIdenticallyDistributed";
        case Errc::InvalidMarginal: return "InvalidMarginal";
        case Errc::NonFiniteValue: return "NonFiniteValue";
        case Errc::DomainCollapsed: return "DomainCollapsed";
        case Errc::ZeroDensity: return "ZeroDensity";
        case Errc::WrongInputShape: return "WrongInputShape";
        case Errc::UnsupportedFrailty: return "UnsupportedFrailty";
        case Errc::RootFindFailure: return "RootFindFailure";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::InsufficientConditioning: return "InsufficientConditioning";
        case Errc::SurvivalUnderflow: return "SurvivalUnderflow";
        case Errc::InvalidGrid: return "InvalidGrid";
        case Errc::SpecParseError: return "SpecParseError";
        case Errc::IoError: return "IoError";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace tterel
