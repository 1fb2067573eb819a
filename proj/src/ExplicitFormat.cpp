#include "stormlet/io/ExplicitFormat.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "stormlet/utility/Exceptions.h"

namespace stormlet::io {

namespace {

/// Rows this close to a distribution are renormalised; anything further off is rejected.
constexpr double kRenormalizeTolerance = 1e-6;

struct Line {
    std::size_t number = 0;
    std::vector<std::string_view> tokens;
};

std::string_view stripLineEnd(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

std::vector<std::string_view> splitTokens(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        std::size_t const start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(text.substr(start, i - start));
        }
    }
    return tokens;
}

std::vector<std::string_view> rawLines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto const end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(stripLineEnd(text.substr(start)));
            break;
        }
        lines.push_back(stripLineEnd(text.substr(start, end - start)));
        start = end + 1;
    }
    return lines;
}

/// Non-empty lines with `#` comments removed.
std::vector<Line> contentLines(std::string_view text) {
    std::vector<Line> result;
    auto const lines = rawLines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = lines[i];
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = splitTokens(line);
        if (!tokens.empty()) {
            result.push_back({i + 1, std::move(tokens)});
        }
    }
    return result;
}

index_type parseIndex(std::string_view token, std::size_t line, char const* what) {
    index_type value = 0;
    auto [end, error] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (error != std::errc() || end != token.data() + token.size()) {
        throw SourceError(ErrorCode::SyntaxError, "expected a " + std::string(what) + " index, found '" + std::string(token) + "'", line);
    }
    return value;
}

template<typename ValueType>
ValueType parseValue(std::string_view token, std::size_t line) {
    ValueType value;
    try {
        value = utility::parseNumber<ValueType>(token);
    } catch (Error const&) {
        throw SourceError(ErrorCode::SyntaxError, "expected a number, found '" + std::string(token) + "'", line);
    }
    if (!utility::isFinite(value)) {
        throw SourceError(ErrorCode::SyntaxError, "value '" + std::string(token) + "' is not finite", line);
    }
    return value;
}

void expectTokenCount(Line const& line, std::size_t count, char const* shape) {
    if (line.tokens.size() != count) {
        throw SourceError(ErrorCode::SyntaxError, "expected '" + std::string(shape) + "'", line.number);
    }
}

template<typename ValueType>
bool withinTolerance(ValueType const& sum) {
    return std::abs(utility::toDouble(sum) - 1.0) <= kRenormalizeTolerance;
}

/// Floating rows already within the model tolerance are kept verbatim so that re-reading
/// written models is idempotent; rational rows must be exact.
template<typename ValueType>
bool alreadyStochastic(ValueType const& sum) {
    if constexpr (NumberTraits<ValueType>::IsExact) {
        return sum == 1;
    } else {
        return std::abs(sum - 1.0) <= models::kStochasticTolerance;
    }
}

std::string describeRow(models::ModelKind kind, index_type state, index_type choice) {
    std::string result = "state " + std::to_string(state);
    if (kind == models::ModelKind::Mdp) {
        result += " choice " + std::to_string(choice);
    }
    return result;
}

bool isIdentifier(std::string_view name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name.front())) || name.front() == '_')) {
        return false;
    }
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

template<typename ValueType>
void appendRewardLines(std::ostringstream& out, std::vector<ValueType> const& values, std::vector<index_type> const* offsets) {
    for (index_type i = 0; i < values.size(); ++i) {
        if (utility::isZero(values[i])) {
            continue;
        }
        if (offsets) {
            auto const state = static_cast<index_type>(std::upper_bound(offsets->begin(), offsets->end(), i) - offsets->begin() - 1);
            out << state << ' ' << (i - (*offsets)[state]) << ' ';
        } else {
            out << i << ' ';
        }
        out << utility::toRoundTripString(values[i]) << '\n';
    }
}

}  // namespace

template<typename ValueType>
ParsedTransitions<ValueType> parseTransitions(std::string_view text, ExplicitOptions const& options) {
    auto const lines = contentLines(text);
    if (lines.empty()) {
        throw SourceError(ErrorCode::SyntaxError, "missing model type header (dtmc, ctmc or mdp)", 1);
    }
    auto const& header = lines.front();
    ParsedTransitions<ValueType> result;
    if (header.tokens.size() == 1 && header.tokens[0] == "dtmc") {
        result.kind = models::ModelKind::Dtmc;
    } else if (header.tokens.size() == 1 && header.tokens[0] == "ctmc") {
        result.kind = models::ModelKind::Ctmc;
    } else if (header.tokens.size() == 1 && header.tokens[0] == "mdp") {
        result.kind = models::ModelKind::Mdp;
    } else {
        throw SourceError(ErrorCode::SyntaxError, "expected model type header (dtmc, ctmc or mdp)", header.number);
    }
    bool const mdp = result.kind == models::ModelKind::Mdp;

    struct Row {
        index_type state;
        index_type choice;
        std::size_t line;
        std::vector<std::pair<index_type, ValueType>> entries;
    };
    std::vector<Row> rows;
    index_type maxState = 0;
    std::set<std::pair<index_type, index_type>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto const& line = lines[i];
        expectTokenCount(line, mdp ? 4 : 3, mdp ? "src choice dst probability" : (result.kind == models::ModelKind::Ctmc ? "src dst rate" : "src dst probability"));
        index_type const source = parseIndex(line.tokens[0], line.number, "state");
        index_type const choice = mdp ? parseIndex(line.tokens[1], line.number, "choice") : 0;
        index_type const target = parseIndex(line.tokens[mdp ? 2 : 1], line.number, "state");
        ValueType const value = parseValue<ValueType>(line.tokens[mdp ? 3 : 2], line.number);

        if (rows.empty()) {
            if (source != 0) {
                throw SourceError(ErrorCode::GapInStateIndices, "transitions must start at state 0, found state " + std::to_string(source), line.number);
            }
        } else {
            auto const& last = rows.back();
            if (source < last.state || (source == last.state && choice < last.choice)) {
                throw SourceError(ErrorCode::SyntaxError, "transitions must be listed in ascending state and choice order", line.number);
            }
            if (source > last.state + 1) {
                throw SourceError(ErrorCode::GapInStateIndices, "state " + std::to_string(last.state + 1) + " has no outgoing transitions", line.number);
            }
        }
        bool const newRow = rows.empty() || source != rows.back().state || choice != rows.back().choice;
        if (newRow) {
            index_type const expectedChoice = (!rows.empty() && source == rows.back().state) ? rows.back().choice + 1 : 0;
            if (choice != expectedChoice) {
                throw SourceError(ErrorCode::SyntaxError, "choice indices of state " + std::to_string(source) + " must be contiguous from 0", line.number);
            }
            rows.push_back({source, choice, line.number, {}});
            seen.clear();
        }
        maxState = std::max({maxState, source, target});
        if (utility::isZero(value)) {
            continue;
        }
        if (value < utility::zero<ValueType>()) {
            throw SourceError(ErrorCode::NonStochasticRow, std::string(result.kind == models::ModelKind::Ctmc ? "rate" : "probability") + " must not be negative",
                              line.number);
        }
        if (!seen.insert({choice, target}).second) {
            result.warnings.push_back("line " + std::to_string(line.number) + ": repeated transition " + describeRow(result.kind, source, choice) + " -> " +
                                      std::to_string(target) + " added to the earlier one");
        }
        rows.back().entries.emplace_back(target, value);
    }

    index_type const states = rows.empty() ? 0 : maxState + 1;
    if (states == 0) {
        throw SourceError(ErrorCode::InvalidModel, "model has no states", header.number);
    }
    result.patchedDeadlocks = BitVector(states);
    std::vector<storage::MatrixEntry<ValueType>> triples;
    result.choiceOffsets.push_back(0);
    std::vector<ValueType> rates;
    index_type row = 0;
    std::size_t next = 0;
    for (index_type state = 0; state < states; ++state) {
        if (next == rows.size() || rows[next].state != state) {
            if (!options.fixDeadlocks) {
                throw Error(ErrorCode::DeadlockState, "state " + std::to_string(state) + " has no outgoing transitions");
            }
            result.patchedDeadlocks.set(state);
            triples.push_back({row++, state, utility::one<ValueType>()});
            rates.push_back(utility::one<ValueType>());
            result.choiceOffsets.push_back(row);
            continue;
        }
        for (; next < rows.size() && rows[next].state == state; ++next) {
            auto const& current = rows[next];
            ValueType sum = utility::zero<ValueType>();
            for (auto const& entry : current.entries) {
                sum += entry.second;
            }
            if (current.entries.empty()) {
                throw SourceError(ErrorCode::DeadlockState, describeRow(result.kind, state, current.choice) + " has no transition with positive value",
                                  current.line);
            }
            if (result.kind == models::ModelKind::Ctmc) {
                rates.push_back(sum);
            } else if (sum != utility::one<ValueType>() && !withinTolerance(sum)) {
                throw SourceError(ErrorCode::NonStochasticRow,
                                  "probabilities of " + describeRow(result.kind, state, current.choice) + " sum to " + utility::toDisplayString(sum), current.line);
            }
            bool const keep = result.kind != models::ModelKind::Ctmc && alreadyStochastic(sum);
            for (auto const& [target, value] : current.entries) {
                triples.push_back({row, target, keep ? value : ValueType(value / sum)});
            }
            ++row;
        }
        result.choiceOffsets.push_back(row);
    }
    result.matrix = storage::buildSparse(std::move(triples), row, states);
    if (result.kind == models::ModelKind::Ctmc) {
        result.exitRates = std::move(rates);
    }
    return result;
}

models::StateLabeling parseLabels(std::string_view text, index_type states) {
    auto const lines = rawLines(text);
    std::size_t i = 0;
    auto skipBlank = [&] {
        while (i < lines.size()) {
            auto line = lines[i];
            auto const declaration = splitTokens(line);
            if (!declaration.empty() && (declaration[0] == "#DECLARATION" || declaration[0] == "#END")) {
                return;
            }
            if (auto hash = line.find('#'); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            if (!splitTokens(line).empty()) {
                return;
            }
            ++i;
        }
    };
    skipBlank();
    if (i == lines.size() || splitTokens(lines[i]) != std::vector<std::string_view>{"#DECLARATION"}) {
        throw SourceError(ErrorCode::MissingDeclarationBlock, "labels must start with a #DECLARATION block", std::min(i + 1, lines.size()));
    }
    models::StateLabeling labeling(states);
    ++i;
    bool closed = false;
    for (; i < lines.size(); ++i) {
        auto const tokens = splitTokens(lines[i]);
        if (tokens.size() == 1 && tokens[0] == "#END") {
            closed = true;
            ++i;
            break;
        }
        for (auto name : tokens) {
            if (!isIdentifier(name)) {
                throw SourceError(ErrorCode::SyntaxError, "invalid label name '" + std::string(name) + "'", i + 1);
            }
            if (labeling.containsLabel(std::string(name))) {
                throw SourceError(ErrorCode::DuplicateName, "label '" + std::string(name) + "' is declared twice", i + 1);
            }
            labeling.addLabel(std::string(name));
        }
    }
    if (!closed) {
        throw SourceError(ErrorCode::MissingDeclarationBlock, "#DECLARATION block is not closed by #END", lines.size());
    }
    for (auto const& line : contentLines(text.substr(0))) {
        if (line.number <= i) {
            continue;
        }
        index_type const state = parseIndex(line.tokens[0], line.number, "state");
        if (state >= states) {
            throw SourceError(ErrorCode::StateOutOfRange, "state " + std::to_string(state) + " is out of range (model has " + std::to_string(states) + " states)",
                              line.number);
        }
        for (std::size_t t = 1; t < line.tokens.size(); ++t) {
            std::string const name(line.tokens[t]);
            if (!labeling.containsLabel(name)) {
                throw SourceError(ErrorCode::UndeclaredLabel, "label '" + name + "' is not declared", line.number);
            }
            labeling.addLabelToState(name, state);
        }
    }
    return labeling;
}

template<typename ValueType>
std::vector<ValueType> parseStateRewards(std::string_view text, index_type states) {
    std::vector<ValueType> result(states, utility::zero<ValueType>());
    BitVector assigned(states);
    for (auto const& line : contentLines(text)) {
        expectTokenCount(line, 2, "state reward");
        index_type const state = parseIndex(line.tokens[0], line.number, "state");
        if (state >= states) {
            throw SourceError(ErrorCode::StateOutOfRange, "state " + std::to_string(state) + " is out of range", line.number);
        }
        if (assigned.get(state)) {
            throw SourceError(ErrorCode::DuplicateAssignment, "state " + std::to_string(state) + " has two rewards", line.number);
        }
        ValueType const value = parseValue<ValueType>(line.tokens[1], line.number);
        if (value < utility::zero<ValueType>()) {
            throw SourceError(ErrorCode::NegativeReward, "reward of state " + std::to_string(state) + " is negative", line.number);
        }
        assigned.set(state);
        result[state] = value;
    }
    return result;
}

template<typename ValueType>
std::vector<ValueType> parseActionRewards(std::string_view text, models::ModelKind kind, std::vector<index_type> const& choiceOffsets) {
    bool const mdp = kind == models::ModelKind::Mdp;
    index_type const states = choiceOffsets.size() - 1;
    std::vector<ValueType> result(choiceOffsets.back(), utility::zero<ValueType>());
    BitVector assigned(choiceOffsets.back());
    for (auto const& line : contentLines(text)) {
        expectTokenCount(line, mdp ? 3 : 2, mdp ? "state choice reward" : "state reward");
        index_type const state = parseIndex(line.tokens[0], line.number, "state");
        if (state >= states) {
            throw SourceError(ErrorCode::StateOutOfRange, "state " + std::to_string(state) + " is out of range", line.number);
        }
        index_type const choice = mdp ? parseIndex(line.tokens[1], line.number, "choice") : 0;
        if (choice >= choiceOffsets[state + 1] - choiceOffsets[state]) {
            throw SourceError(ErrorCode::ChoiceOutOfRange, "state " + std::to_string(state) + " has no choice " + std::to_string(choice), line.number);
        }
        index_type const row = choiceOffsets[state] + choice;
        if (assigned.get(row)) {
            throw SourceError(ErrorCode::DuplicateAssignment, describeRow(kind, state, choice) + " has two rewards", line.number);
        }
        ValueType const value = parseValue<ValueType>(line.tokens[mdp ? 2 : 1], line.number);
        if (value < utility::zero<ValueType>()) {
            throw SourceError(ErrorCode::NegativeReward, "reward of " + describeRow(kind, state, choice) + " is negative", line.number);
        }
        assigned.set(row);
        result[row] = value;
    }
    return result;
}

template<typename ValueType>
models::Model<ValueType> loadExplicit(ExplicitBundle const& bundle, ExplicitOptions const& options) {
    auto transitions = parseTransitions<ValueType>(bundle.transitions, options);
    index_type const states = transitions.choiceOffsets.size() - 1;
    auto labeling = parseLabels(bundle.labels, states);
    BitVector initial = labeling.containsLabel("init") ? labeling.getStates("init") : BitVector(states, {0});
    std::map<std::string, models::RewardModel<ValueType>> rewards;
    for (auto const& [name, texts] : bundle.rewards) {
        std::optional<std::vector<ValueType>> stateRewards;
        std::optional<std::vector<ValueType>> actionRewards;
        if (texts.stateRewards) {
            stateRewards = parseStateRewards<ValueType>(*texts.stateRewards, states);
        }
        if (texts.actionRewards) {
            actionRewards = parseActionRewards<ValueType>(*texts.actionRewards, transitions.kind, transitions.choiceOffsets);
        }
        rewards.emplace(name, models::RewardModel<ValueType>(name, std::move(stateRewards), std::move(actionRewards)));
    }
    return models::Model<ValueType>(transitions.kind, std::move(transitions.matrix), std::move(transitions.choiceOffsets), std::move(labeling), std::move(initial),
                                    std::move(rewards), std::move(transitions.exitRates));
}

template<typename ValueType>
ExplicitBundle writeModel(models::Model<ValueType> const& model) {
    ExplicitBundle bundle;
    auto const kind = model.kind();
    auto const& offsets = model.choiceOffsets();
    std::ostringstream transitions;
    transitions << models::toString(kind) << '\n';
    for (index_type state = 0; state < model.numberOfStates(); ++state) {
        for (auto choice = offsets[state]; choice < offsets[state + 1]; ++choice) {
            auto const row = model.matrix().row(choice);
            for (std::size_t k = 0; k < row.size(); ++k) {
                transitions << state << ' ';
                if (kind == models::ModelKind::Mdp) {
                    transitions << (choice - offsets[state]) << ' ';
                }
                ValueType const value = kind == models::ModelKind::Ctmc ? ValueType(row.values[k] * model.exitRates()[state]) : row.values[k];
                transitions << row.columns[k] << ' ' << utility::toRoundTripString(value) << '\n';
            }
        }
    }
    bundle.transitions = transitions.str();

    auto labeling = model.labeling();
    if (!labeling.containsLabel("init") && model.initialStates() != BitVector(model.numberOfStates(), {0})) {
        labeling.addLabel("init", model.initialStates());
    }
    auto const names = labeling.labelNames();
    std::ostringstream labels;
    labels << "#DECLARATION\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
        labels << (i == 0 ? "" : " ") << names[i];
    }
    labels << (names.empty() ? "" : "\n") << "#END\n";
    for (index_type state = 0; state < model.numberOfStates(); ++state) {
        std::string line;
        for (auto const& name : names) {
            if (labeling.getStates(name).get(state)) {
                line += ' ' + name;
            }
        }
        if (!line.empty()) {
            labels << state << line << '\n';
        }
    }
    bundle.labels = labels.str();

    for (auto const& [name, reward] : model.rewardModels()) {
        RewardTexts texts;
        if (reward.hasStateRewards()) {
            std::ostringstream out;
            appendRewardLines(out, reward.stateRewards(), nullptr);
            texts.stateRewards = out.str();
        }
        if (reward.hasActionRewards()) {
            std::ostringstream out;
            appendRewardLines(out, reward.actionRewards(), kind == models::ModelKind::Mdp ? &offsets : nullptr);
            texts.actionRewards = out.str();
        }
        bundle.rewards.emplace(name, std::move(texts));
    }
    return bundle;
}

std::string readFile(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    }
    std::ostringstream content;
    content << in.rdbuf();
    return content.str();
}

ExplicitBundle readExplicitFiles(std::filesystem::path const& transitions, std::filesystem::path const& labels,
                                 std::optional<std::filesystem::path> const& stateRewards, std::optional<std::filesystem::path> const& actionRewards) {
    ExplicitBundle bundle;
    bundle.transitions = readFile(transitions);
    bundle.labels = readFile(labels);
    if (stateRewards || actionRewards) {
        std::string const name = (stateRewards ? *stateRewards : *actionRewards).stem().string();
        RewardTexts texts;
        if (stateRewards) {
            texts.stateRewards = readFile(*stateRewards);
        }
        if (actionRewards) {
            texts.actionRewards = readFile(*actionRewards);
        }
        bundle.rewards.emplace(name, std::move(texts));
    }
    return bundle;
}

void writeExplicitFiles(ExplicitBundle const& bundle, std::filesystem::path const& directory, std::string const& stem) {
    std::error_code error;
    std::filesystem::create_directories(directory, error);
    auto write = [&](std::filesystem::path const& path, std::string const& content) {
        std::ofstream out(path, std::ios::binary);
        out << content;
        if (!out) {
            throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
        }
    };
    write(directory / (stem + ".tra"), bundle.transitions);
    write(directory / (stem + ".lab"), bundle.labels);
    for (auto const& [name, texts] : bundle.rewards) {
        std::string const file = name.empty() ? "rewards" : name;
        if (texts.stateRewards) {
            write(directory / (file + ".srew"), *texts.stateRewards);
        }
        if (texts.actionRewards) {
            write(directory / (file + ".trew"), *texts.actionRewards);
        }
    }
}

template ParsedTransitions<double> parseTransitions(std::string_view, ExplicitOptions const&);
template ParsedTransitions<Rational> parseTransitions(std::string_view, ExplicitOptions const&);
template std::vector<double> parseStateRewards(std::string_view, index_type);
template std::vector<Rational> parseStateRewards(std::string_view, index_type);
template std::vector<double> parseActionRewards(std::string_view, models::ModelKind, std::vector<index_type> const&);
template std::vector<Rational> parseActionRewards(std::string_view, models::ModelKind, std::vector<index_type> const&);
template models::Model<double> loadExplicit(ExplicitBundle const&, ExplicitOptions const&);
template models::Model<Rational> loadExplicit(ExplicitBundle const&, ExplicitOptions const&);
template ExplicitBundle writeModel(models::Model<double> const&);
template ExplicitBundle writeModel(models::Model<Rational> const&);

}  // namespace stormlet::io
