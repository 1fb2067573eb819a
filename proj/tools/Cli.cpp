#include "stormlet/cli/Cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "stormlet/io/ExplicitFormat.h"
#include "stormlet/logic/PropertyParser.h"
#include "stormlet/logic/Resolver.h"
#include "stormlet/modelchecker/SparseModelChecker.h"
#include "stormlet/prism/Explorer.h"
#include "stormlet/prism/Parser.h"
#include "stormlet/prism/TypeChecker.h"

namespace stormlet::cli {

namespace {

using storage::index_type;

constexpr char const* kVersion = "stormlet 0.1.0";

unsigned threadsFromEnvironment() {
    char const* value = std::getenv("STORMLET_THREADS");
    if (value == nullptr || *value == '\0') {
        return 1;
    }
    std::string const text(value);
    if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 6) {
        throw Error(ErrorCode::UsageError, "STORMLET_THREADS must be a non-negative integer, got '" + text + "'");
    }
    return static_cast<unsigned>(std::stoul(text));
}

template<typename ValueType>
std::string displayValue(modelchecker::CheckResult<ValueType> const& result, index_type state) {
    if (result.isInfinite(state)) {
        return "inf";
    }
    if (result.isUndefined(state)) {
        return "nan";
    }
    return utility::toDisplayString(result.values[state]);
}

struct LoadedModel {
    std::optional<prism::CheckedProgram> program;
    std::optional<prism::StateMap> states;
};

template<typename ValueType>
models::Model<ValueType> loadModel(RunConfig const& config, LoadedModel& loaded) {
    if (config.prismFile) {
        loaded.program = prism::typecheck(prism::parseProgram(io::readFile(*config.prismFile)), prism::parseConstantBindings(config.constants));
        auto explored = prism::explore<ValueType>(*loaded.program, prism::ExplorationOptions{config.fixDeadlocks});
        loaded.states = std::move(explored.states);
        return std::move(explored.model);
    }
    auto const bundle = io::readExplicitFiles(*config.transitionsFile, *config.labelsFile, config.stateRewardsFile, config.actionRewardsFile);
    return io::loadExplicit<ValueType>(bundle, io::ExplicitOptions{config.fixDeadlocks});
}

std::vector<logic::Property> collectProperties(RunConfig const& config) {
    std::vector<logic::Property> properties;
    for (auto const& text : config.properties) {
        properties.push_back(logic::parseProperty(text));
    }
    if (config.propertyFile) {
        auto fromFile = logic::parsePropertyFile(io::readFile(*config.propertyFile));
        properties.insert(properties.end(), fromFile.begin(), fromFile.end());
    }
    if (properties.empty()) {
        throw Error(ErrorCode::UsageError, "no property given");
    }
    return properties;
}

template<typename ValueType>
int runTyped(RunConfig const& config, std::ostream& out, std::ostream& err) {
    LoadedModel loaded;
    auto const model = loadModel<ValueType>(config, loaded);
    auto const properties = collectProperties(config);
    if (config.exportDirectory) {
        io::writeExplicitFiles(io::writeModel(model), *config.exportDirectory);
    }

    logic::ResolutionContext const context{model.kind(), &model.labeling(), loaded.program ? &*loaded.program : nullptr,
                                           loaded.states ? &*loaded.states : nullptr};
    std::ostringstream buffer;
    bool violated = false;
    for (auto const& property : properties) {
        auto const formula = logic::resolve(property.formula, context);
        auto const result = modelchecker::check(model, formula, config.env);
        if (config.format == OutputFormat::Json) {
            buffer << formatJson(property.text, result, model.initialStates()) << '\n';
        } else {
            buffer << "Model checking property: " << property.text << '\n' << formatHuman(result, model.initialStates());
        }
        if (result.undefined.count() > 0) {
            err << "warning: the condition of '" << property.text << "' has probability zero in " << result.undefined.count() << " state(s)\n";
        }
        if (result.truth) {
            model.initialStates().forEachSet([&](index_type s) { violated = violated || !result.truth->get(s); });
        }
    }
    out << buffer.str();
    return config.failOnFalse && violated ? ExitCode::BoundViolated : ExitCode::Ok;
}

}  // namespace

int exitCodeFor(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotConverged:
            return ExitCode::NotConverged;
        case ErrorCode::InvalidModel:
        case ErrorCode::NonStochasticRow:
        case ErrorCode::DeadlockState:
        case ErrorCode::NegativeReward:
        case ErrorCode::NonNormalizedDistribution:
        case ErrorCode::OutOfBoundsAssignment:
        case ErrorCode::DivisionByZero:
        case ErrorCode::StateLimitExceeded:
            return ExitCode::ModelError;
        default:
            return ExitCode::UsageOrParse;
    }
}

template<typename ValueType>
std::string formatHuman(modelchecker::CheckResult<ValueType> const& result, BitVector const& initialStates) {
    std::string text;
    initialStates.forEachSet([&](index_type s) {
        text += "Result (state " + std::to_string(s) + "): ";
        if (result.truth) {
            text += result.truth->get(s) ? "true" : "false";
        } else {
            text += displayValue(result, s);
        }
        text += '\n';
    });
    return text;
}

template<typename ValueType>
std::string formatJson(std::string const& property, modelchecker::CheckResult<ValueType> const& result, BitVector const& initialStates) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    initialStates.forEachSet([&](index_type s) {
        auto const key = std::to_string(s);
        if (result.truth) {
            values[key] = result.truth->get(s);
        } else if (result.isInfinite(s)) {
            values[key] = "inf";
        } else if (result.isUndefined(s)) {
            values[key] = nullptr;
        } else if constexpr (NumberTraits<ValueType>::IsExact) {
            values[key] = utility::toRoundTripString(result.values[s]);
        } else {
            values[key] = result.values[s];
        }
    });
    nlohmann::ordered_json metadata = {{"iterations", result.iterations}, {"method", result.method}, {"time_ms", result.timeMs}};
    if (result.truth && !result.values.empty()) {
        nlohmann::ordered_json numeric = nlohmann::ordered_json::object();
        initialStates.forEachSet([&](index_type s) {
            if constexpr (NumberTraits<ValueType>::IsExact) {
                numeric[std::to_string(s)] = result.isInfinite(s) ? "inf" : utility::toRoundTripString(result.values[s]);
            } else {
                numeric[std::to_string(s)] = result.isInfinite(s) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(result.values[s]);
            }
        });
        metadata["quantities"] = std::move(numeric);
    }
    if (result.undefined.count() > 0) {
        metadata["condition_zero"] = result.undefined.setIndices();
    }
    nlohmann::ordered_json document = {{"property", property}, {"values", std::move(values)}, {"metadata", std::move(metadata)}};
    return document.dump();
}

template std::string formatHuman(modelchecker::CheckResult<double> const&, BitVector const&);
template std::string formatHuman(modelchecker::CheckResult<Rational> const&, BitVector const&);
template std::string formatJson(std::string const&, modelchecker::CheckResult<double> const&, BitVector const&);
template std::string formatJson(std::string const&, modelchecker::CheckResult<Rational> const&, BitVector const&);

ParsedArguments parseArgs(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probabilistic model checker for DTMCs, CTMCs and MDPs.", "stormlet"};
    app.set_version_flag("--version", kVersion);

    RunConfig config;
    std::vector<std::string> explicitFiles;
    std::string prismFile;
    std::string stateRewards;
    std::string actionRewards;
    std::string propertyFile;
    std::string exportDirectory;
    std::string linearMethod = "gauss-seidel";
    std::string minMaxMethod = "vi";
    bool absolute = false;
    bool json = false;

    auto* explicitOption = app.add_option("--explicit", explicitFiles, "Explicit model: transitions and labels files")->expected(2)->type_name("<tra> <lab>");
    auto* prismOption = app.add_option("--prism", prismFile, "PRISM-language model file");
    explicitOption->excludes(prismOption);
    app.add_option("--srew", stateRewards, "State rewards file (explicit input)")->needs(explicitOption);
    app.add_option("--trew", actionRewards, "Transition rewards file (explicit input)")->needs(explicitOption);
    app.add_option("--constants", config.constants, "Constant values, e.g. N=5,p=0.3")->needs(prismOption);
    app.add_option("--prop", config.properties, "Property to check (repeatable)");
    app.add_option("--prop-file", propertyFile, "File with one property per line");
    app.add_option("--solver", linearMethod, "Linear equation solver")->check(CLI::IsMember({"jacobi", "gauss-seidel", "exact"}))->capture_default_str();
    app.add_option("--minmax", minMaxMethod, "Min/max solver: value or policy iteration")->check(CLI::IsMember({"vi", "pi"}))->capture_default_str();
    app.add_option("--precision", config.env.precision, "Convergence precision")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--absolute", absolute, "Use the absolute convergence criterion");
    app.add_option("--max-iter", config.env.maxIterations, "Iteration limit")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--exact", config.exact, "Exact rational arithmetic");
    app.add_flag("--fix-deadlocks", config.fixDeadlocks, "Add self-loops to deadlock states");
    app.add_flag("--fail-on-false", config.failOnFalse, "Exit with code 2 if a bounded property fails in an initial state");
    app.add_option("--export-model", exportDirectory, "Write the built model in explicit format to this directory");
    app.add_flag("--json", json, "Print results as JSON lines");

    std::vector<char const*> argv;
    for (auto const& arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return {std::nullopt, ExitCode::Ok};
    } catch (CLI::CallForVersion const&) {
        out << kVersion << '\n';
        return {std::nullopt, ExitCode::Ok};
    } catch (CLI::ParseError const& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return {std::nullopt, ExitCode::UsageOrParse};
    }

    auto usage = [&](std::string const& message) {
        err << "error: " << message << "\nRun with --help for usage.\n";
        return ParsedArguments{std::nullopt, ExitCode::UsageOrParse};
    };
    if (explicitFiles.empty() && prismFile.empty()) {
        return usage("one of --explicit or --prism is required");
    }
    if (config.properties.empty() && propertyFile.empty()) {
        return usage("at least one --prop or --prop-file is required");
    }
    if (!explicitFiles.empty()) {
        config.transitionsFile = explicitFiles[0];
        config.labelsFile = explicitFiles[1];
    } else {
        config.prismFile = prismFile;
    }
    if (!stateRewards.empty()) {
        config.stateRewardsFile = stateRewards;
    }
    if (!actionRewards.empty()) {
        config.actionRewardsFile = actionRewards;
    }
    if (!propertyFile.empty()) {
        config.propertyFile = propertyFile;
    }
    if (!exportDirectory.empty()) {
        config.exportDirectory = exportDirectory;
    }
    config.env.linearMethod = linearMethod == "jacobi" ? solver::LinearMethod::Jacobi
                              : linearMethod == "exact" ? solver::LinearMethod::Exact
                                                        : solver::LinearMethod::GaussSeidel;
    config.env.minMaxMethod = minMaxMethod == "pi" ? solver::MinMaxMethod::PolicyIteration : solver::MinMaxMethod::ValueIteration;
    config.env.criterion = absolute ? solver::ConvergenceCriterion::Absolute : solver::ConvergenceCriterion::Relative;
    if (config.exact) {
        config.env.linearMethod = solver::LinearMethod::Exact;
        config.env.minMaxMethod = solver::MinMaxMethod::PolicyIteration;
    }
    config.format = json ? OutputFormat::Json : OutputFormat::Human;
    try {
        config.env.threads = threadsFromEnvironment();
    } catch (Error const& e) {
        return usage(e.what());
    }
    return {std::move(config), ExitCode::Ok};
}

int run(RunConfig const& config, std::ostream& out, std::ostream& err) {
    try {
        return config.exact ? runTyped<Rational>(config, out, err) : runTyped<double>(config, out, err);
    } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return exitCodeFor(e.code());
    } catch (std::exception const& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::UsageOrParse;
    }
}

int runMain(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    auto parsed = parseArgs(args, out, err);
    if (!parsed.config) {
        return parsed.exitCode;
    }
    return run(*parsed.config, out, err);
}

}  // namespace stormlet::cli
