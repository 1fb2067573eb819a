#include "stormlet/utility/Exceptions.h"

namespace stormlet {

std::string_view toString(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::NonFiniteValue:
            return "NonFiniteValue";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::Unsupported:
            return "Unsupported";
        case ErrorCode::InvalidModel:
            return "InvalidModel";
        case ErrorCode::NonStochasticRow:
            return "NonStochasticRow";
        case ErrorCode::DeadlockState:
            return "DeadlockState";
        case ErrorCode::NegativeReward:
            return "NegativeReward";
        case ErrorCode::SyntaxError:
            return "SyntaxError";
        case ErrorCode::GapInStateIndices:
            return "GapInStateIndices";
        case ErrorCode::UndeclaredLabel:
            return "UndeclaredLabel";
        case ErrorCode::StateOutOfRange:
            return "StateOutOfRange";
        case ErrorCode::MissingDeclarationBlock:
            return "MissingDeclarationBlock";
        case ErrorCode::DuplicateAssignment:
            return "DuplicateAssignment";
        case ErrorCode::ChoiceOutOfRange:
            return "ChoiceOutOfRange";
        case ErrorCode::UnknownCharacter:
            return "UnknownCharacter";
        case ErrorCode::UndefinedConstant:
            return "UndefinedConstant";
        case ErrorCode::TypeMismatch:
            return "TypeMismatch";
        case ErrorCode::CyclicFormula:
            return "CyclicFormula";
        case ErrorCode::DuplicateName:
            return "DuplicateName";
        case ErrorCode::DivisionByZero:
            return "DivisionByZero";
        case ErrorCode::OutOfBoundsAssignment:
            return "OutOfBoundsAssignment";
        case ErrorCode::NonNormalizedDistribution:
            return "NonNormalizedDistribution";
        case ErrorCode::StateLimitExceeded:
            return "StateLimitExceeded";
        case ErrorCode::UnknownLabel:
            return "UnknownLabel";
        case ErrorCode::PredicateWithoutStateMap:
            return "PredicateWithoutStateMap";
        case ErrorCode::OptimumMissingForMdp:
            return "OptimumMissingForMdp";
        case ErrorCode::OptimumGivenForDeterministic:
            return "OptimumGivenForDeterministic";
        case ErrorCode::MissingRewardModel:
            return "MissingRewardModel";
        case ErrorCode::UnsupportedCombination:
            return "UnsupportedCombination";
        case ErrorCode::ContinuousTimeUnsupported:
            return "ContinuousTimeUnsupported";
        case ErrorCode::NotConverged:
            return "NotConverged";
        case ErrorCode::DiagonalOne:
            return "DiagonalOne";
        case ErrorCode::SingularMatrix:
            return "SingularMatrix";
        case ErrorCode::LambdaTooLarge:
            return "LambdaTooLarge";
        case ErrorCode::UsageError:
            return "UsageError";
        case ErrorCode::IoError:
            return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, std::string const& message) : std::runtime_error(message), errorCode(code) {}

SourceError::SourceError(ErrorCode code, std::string const& message, std::size_t line, std::size_t column)
    : Error(code, "line " + std::to_string(line) + (column > 0 ? ":" + std::to_string(column) : std::string()) + ": " + message),
      sourceLine(line),
      sourceColumn(column) {}

NotConvergedError::NotConvergedError(std::string const& message, std::uint64_t iterations, std::vector<double> bestIterate)
    : Error(ErrorCode::NotConverged, message), iterationCount(iterations), iterate(std::move(bestIterate)) {}

}  // namespace stormlet
