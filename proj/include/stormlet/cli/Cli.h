#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stormlet/modelchecker/CheckResult.h"
#include "stormlet/solver/SolverEnvironment.h"
#include "stormlet/utility/Exceptions.h"

namespace stormlet::cli {

enum class OutputFormat { Human, Json };

/// Process exit codes.
enum ExitCode : int { Ok = 0, UsageOrParse = 1, BoundViolated = 2, NotConverged = 3, ModelError = 4 };

struct RunConfig {
    std::optional<std::filesystem::path> transitionsFile;
    std::optional<std::filesystem::path> labelsFile;
    std::optional<std::filesystem::path> stateRewardsFile;
    std::optional<std::filesystem::path> actionRewardsFile;
    std::optional<std::filesystem::path> prismFile;
    std::string constants;

    /// Inline properties in argument order; properties of the file follow them.
    std::vector<std::string> properties;
    std::optional<std::filesystem::path> propertyFile;

    solver::SolverEnvironment env;
    bool exact = false;
    bool fixDeadlocks = false;
    bool failOnFalse = false;
    std::optional<std::filesystem::path> exportDirectory;
    OutputFormat format = OutputFormat::Human;
};

struct ParsedArguments {
    std::optional<RunConfig> config;
    /// Exit code to use when no config was produced (help, version, usage errors).
    int exitCode = ExitCode::Ok;
};

/// Parses the command line (args[0] is the program name). Help and version go to `out`,
/// usage errors to `err`. STORMLET_THREADS sets the solver thread count.
ParsedArguments parseArgs(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

/// Loads the model, checks every property in order and prints the results. Nothing is
/// written to `out` unless every property was checked.
int run(RunConfig const& config, std::ostream& out, std::ostream& err);

/// parseArgs followed by run.
int runMain(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

/// Exit code for a library error.
int exitCodeFor(ErrorCode code);

/// Human output: one `Result (state i): v` line per initial state.
template<typename ValueType>
std::string formatHuman(modelchecker::CheckResult<ValueType> const& result, BitVector const& initialStates);

/// One compact JSON object: {"property", "values": {state: value}, "metadata": {...}}.
template<typename ValueType>
std::string formatJson(std::string const& property, modelchecker::CheckResult<ValueType> const& result, BitVector const& initialStates);

}  // namespace stormlet::cli
