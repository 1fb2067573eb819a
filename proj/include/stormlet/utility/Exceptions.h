#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stormlet {

enum class ErrorCode {
    InvalidArgument,
    IndexOutOfRange,
    NonFiniteValue,
    DimensionMismatch,
    Unsupported,
    InvalidModel,
    NonStochasticRow,
    DeadlockState,
    NegativeReward,
    SyntaxError,
    GapInStateIndices,
    UndeclaredLabel,
    StateOutOfRange,
    MissingDeclarationBlock,
    DuplicateAssignment,
    ChoiceOutOfRange,
    UnknownCharacter,
    UndefinedConstant,
    TypeMismatch,
    CyclicFormula,
    DuplicateName,
    DivisionByZero,
    OutOfBoundsAssignment,
    NonNormalizedDistribution,
    StateLimitExceeded,
    UnknownLabel,
    PredicateWithoutStateMap,
    OptimumMissingForMdp,
    OptimumGivenForDeterministic,
    MissingRewardModel,
    UnsupportedCombination,
    ContinuousTimeUnsupported,
    NotConverged,
    DiagonalOne,
    SingularMatrix,
    LambdaTooLarge,
    UsageError,
    IoError
};

std::string_view toString(ErrorCode code);

/// Base of every error raised by the library. The code identifies the failure class;
/// the message carries the human-readable diagnostic.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& message);

    ErrorCode code() const noexcept {
        return errorCode;
    }

   private:
    ErrorCode errorCode;
};

/// Diagnostic tied to a source position (1-based line and column; column 0 when unknown).
class SourceError : public Error {
   public:
    SourceError(ErrorCode code, std::string const& message, std::size_t line, std::size_t column = 0);

    std::size_t line() const noexcept {
        return sourceLine;
    }
    std::size_t column() const noexcept {
        return sourceColumn;
    }

   private:
    std::size_t sourceLine;
    std::size_t sourceColumn;
};

/// Raised when an iterative method exhausts its iteration budget. Carries the last iterate.
class NotConvergedError : public Error {
   public:
    NotConvergedError(std::string const& message, std::uint64_t iterations, std::vector<double> bestIterate);

    std::uint64_t iterations() const noexcept {
        return iterationCount;
    }
    std::vector<double> const& bestIterate() const noexcept {
        return iterate;
    }

   private:
    std::uint64_t iterationCount;
    std::vector<double> iterate;
};

}  // namespace stormlet
