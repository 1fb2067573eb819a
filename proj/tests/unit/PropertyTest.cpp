#include <gtest/gtest.h>

#include <random>

#include "stormlet/io/ExplicitFormat.h"
#include "stormlet/logic/PropertyParser.h"
#include "stormlet/logic/Resolver.h"
#include "stormlet/prism/Explorer.h"
#include "stormlet/prism/Parser.h"

using namespace stormlet;
using namespace stormlet::logic;

namespace {

ErrorCode codeOf(auto&& action) {
    try {
        action();
    } catch (Error const& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

ProbabilityOperator const& probability(Property const& property) {
    EXPECT_EQ(property.formula->kind, StateFormula::Kind::Probability);
    return *property.formula->probability;
}

void expectReparses(std::string const& text) {
    Property const first = parseProperty(text);
    std::string const printed = toString(*first.formula);
    Property const second = parseProperty(printed);
    EXPECT_TRUE(equal(first.formula, second.formula)) << text << " printed as " << printed;
    EXPECT_EQ(toString(*second.formula), printed);
}

}  // namespace

TEST(PropertyParserTest, EventuallyIsTrueUntil) {
    auto const property = parseProperty("P=? [ F \"goal\" ]");
    auto const& op = probability(property);
    EXPECT_FALSE(op.bound);
    EXPECT_FALSE(op.optimum);
    EXPECT_EQ(op.path.kind, PathFormula::Kind::Until);
    EXPECT_TRUE(equal(op.path.left, StateFormula::boolean(true)));
    EXPECT_TRUE(equal(op.path.right, StateFormula::labelAtom("goal")));
    EXPECT_FALSE(op.path.bound);
    auto const explicitUntil = parseProperty("P=? [ true U \"goal\" ]");
    EXPECT_TRUE(equal(property.formula, explicitUntil.formula));
}

TEST(PropertyParserTest, BoundedUntilWithOptimum) {
    auto const property = parseProperty("Pmax=? [ \"a\" U<=5 \"b\" ]");
    auto const& op = probability(property);
    EXPECT_EQ(op.optimum, OptimizationDirection::Maximize);
    ASSERT_TRUE(op.path.bound);
    EXPECT_EQ(op.path.bound->value, 5);
    EXPECT_TRUE(equal(op.path.left, StateFormula::labelAtom("a")));
}

TEST(PropertyParserTest, Conditional) {
    auto const property = parseProperty("P=? [ F \"a\" || F \"b\" ]");
    auto const& op = probability(property);
    ASSERT_TRUE(op.condition);
    EXPECT_TRUE(equal(op.path.right, StateFormula::labelAtom("a")));
    EXPECT_TRUE(equal(op.condition->right, StateFormula::labelAtom("b")));
}

TEST(PropertyParserTest, BoundsAndNextAndGlobally) {
    auto const property = parseProperty("Pmin>=0.25 [ X !\"a\" ]");
    auto const& op = probability(property);
    ASSERT_TRUE(op.bound);
    EXPECT_EQ(op.bound->comparison, ComparisonType::GreaterEqual);
    EXPECT_EQ(op.bound->threshold.value, Rational(1, 4));
    EXPECT_EQ(op.path.kind, PathFormula::Kind::Next);
    EXPECT_EQ(op.path.right->kind, StateFormula::Kind::Not);

    auto const globally = parseProperty("P<0.1 [ G<=2.5 \"safe\" ]");
    EXPECT_EQ(probability(globally).path.kind, PathFormula::Kind::Globally);
    EXPECT_EQ(probability(globally).path.bound->value, Rational(5, 2));
}

TEST(PropertyParserTest, RewardOperators) {
    auto const reach = parseProperty("R{\"flips\"}=? [ F \"done\" ]");
    ASSERT_EQ(reach.formula->kind, StateFormula::Kind::Reward);
    EXPECT_EQ(reach.formula->reward->rewardModel, "flips");
    EXPECT_EQ(reach.formula->reward->target, RewardOperator::Target::Reachability);

    auto const cumulative = parseProperty("Rmin<=4 [ C<=3 ]");
    auto const& op = *cumulative.formula->reward;
    EXPECT_EQ(op.optimum, OptimizationDirection::Minimize);
    EXPECT_EQ(op.target, RewardOperator::Target::Cumulative);
    EXPECT_EQ(op.cumulativeBound->value, 3);
    EXPECT_TRUE(op.rewardModel.empty());

    auto const prismStyle = parseProperty("R{\"r\"}max=? [ F \"g\" ]");
    auto const specStyle = parseProperty("Rmax{\"r\"}=? [ F \"g\" ]");
    EXPECT_TRUE(equal(prismStyle.formula, specStyle.formula));
}

TEST(PropertyParserTest, StateFormulaPrecedence) {
    auto const property = parseProperty("P=? [ F !\"a\" & \"b\" | \"c\" ]");
    auto const& target = *probability(property).path.right;
    ASSERT_EQ(target.kind, StateFormula::Kind::Or);
    ASSERT_EQ(target.operands[0]->kind, StateFormula::Kind::And);
    EXPECT_EQ(target.operands[0]->operands[0]->kind, StateFormula::Kind::Not);
}

TEST(PropertyParserTest, PredicatesAndParentheses) {
    auto const property = parseProperty("P=? [ (x=1 & y>2) U (\"a\" | \"b\") ]");
    auto const& path = probability(property).path;
    EXPECT_EQ(path.left->kind, StateFormula::Kind::Predicate);
    EXPECT_EQ(prism::toString(path.left->predicate), "((x = 1) & (y > 2))");
    EXPECT_EQ(path.right->kind, StateFormula::Kind::Or);
}

TEST(PropertyParserTest, NestedOperators) {
    auto const property = parseProperty("P>=1 [ F P>=0.5 [ F \"a\" ] ]");
    auto const& inner = *probability(property).path.right;
    ASSERT_EQ(inner.kind, StateFormula::Kind::Probability);
    EXPECT_EQ(inner.probability->bound->threshold.value, Rational(1, 2));
}

TEST(PropertyParserTest, SyntaxErrorsHavePositions) {
    try {
        parseProperty("P=? [ F \"a\" ");
        FAIL();
    } catch (SourceError const& e) {
        EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
        EXPECT_EQ(e.line(), 1u);
    }
    try {
        parseProperty("P=0.5 [ F \"a\" ]");
        FAIL();
    } catch (SourceError const& e) {
        EXPECT_EQ(e.column(), 2u);
    }
    for (std::string bad : {"", "F \"a\"", "P=? [ \"a\" ]", "P=? [ F \"a\" ] junk", "R=? [ G \"a\" ]", "P=? [ F<= \"a\" ]", "Q=? [F \"a\"]", "P=? [ F (x=) ]"}) {
        EXPECT_EQ(codeOf([&] { parseProperty(bad); }), ErrorCode::SyntaxError) << bad;
    }
}

TEST(PropertyParserTest, FileLinesAndComments) {
    auto const properties = parsePropertyFile("// header\n\nP=? [ F \"a\" ] // trailing\n  Pmax=? [ X \"b\" ]\n");
    ASSERT_EQ(properties.size(), 2u);
    EXPECT_EQ(properties[0].text, "P=? [ F \"a\" ]");
    EXPECT_EQ(properties[1].text, "Pmax=? [ X \"b\" ]");
    try {
        parsePropertyFile("P=? [ F \"a\" ]\n\nP=? [ F \"a\" \n");
        FAIL();
    } catch (SourceError const& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(PropertyParserTest, CorpusPropertiesRoundTrip) {
    for (std::string name : {"die.props", "gamble.props", "queue.props", "sync.props"}) {
        auto const text = io::readFile(std::string(STORMLET_CORPUS_DIR) + "/" + name);
        auto const properties = parsePropertyFile(text);
        EXPECT_FALSE(properties.empty());
        for (auto const& property : properties) {
            expectReparses(property.text);
        }
    }
    for (std::string text : {"P=? [ (x=1) U<=3 !(b) ]", "Rmax{\"r\"}>=2.5 [ C<=10 ]", "P=? [ X (min(x, 2) >= 1) ]", "P=? [ F (\"a\" & \"b\") | \"c\" ]",
                             "P=? [ F !!\"a\" ]", "P=? [ G<=1e-3 P<0.5 [ X true ] ]", "P=? [ F (-x < 3) ]", "P=? [ F (b) ]"}) {
        expectReparses(text);
    }
}

namespace {

StateFormulaPtr randomState(std::mt19937_64& rng, int depth);

std::string randomNumber(std::mt19937_64& rng) {
    static std::vector<std::string> const numbers{"0", "1", "0.5", "3", "0.125", "2.75", "1e-3", "10"};
    return numbers[rng() % numbers.size()];
}

PathFormula randomPath(std::mt19937_64& rng, int depth) {
    PathFormula path;
    switch (rng() % 4) {
        case 0:
            path.kind = PathFormula::Kind::Next;
            path.right = randomState(rng, depth - 1);
            return path;
        case 1:
            path.kind = PathFormula::Kind::Globally;
            break;
        case 2:
            path.kind = PathFormula::Kind::Until;
            path.left = StateFormula::boolean(true);
            break;
        default:
            path.kind = PathFormula::Kind::Until;
            path.left = randomState(rng, depth - 1);
            break;
    }
    if (rng() % 2 == 0) {
        path.bound = Number::parse(randomNumber(rng));
    }
    path.right = randomState(rng, depth - 1);
    return path;
}

std::optional<OptimizationDirection> randomOptimum(std::mt19937_64& rng) {
    switch (rng() % 3) {
        case 0: return std::nullopt;
        case 1: return OptimizationDirection::Minimize;
        default: return OptimizationDirection::Maximize;
    }
}

std::optional<Bound> randomBound(std::mt19937_64& rng) {
    if (rng() % 2 == 0) {
        return std::nullopt;
    }
    Bound bound;
    bound.comparison = static_cast<ComparisonType>(rng() % 4);
    bound.threshold = Number::parse(randomNumber(rng));
    return bound;
}

StateFormulaPtr randomOperator(std::mt19937_64& rng, int depth) {
    if (rng() % 3 == 0) {
        RewardOperator op;
        op.optimum = randomOptimum(rng);
        op.bound = randomBound(rng);
        op.rewardModel = rng() % 2 == 0 ? "" : "r" + std::to_string(rng() % 3);
        if (rng() % 2 == 0) {
            op.target = RewardOperator::Target::Cumulative;
            op.cumulativeBound = Number::parse(randomNumber(rng));
        } else {
            op.goal = randomState(rng, depth - 1);
        }
        return StateFormula::rewardOperator(std::move(op));
    }
    ProbabilityOperator op;
    op.optimum = randomOptimum(rng);
    op.bound = randomBound(rng);
    op.path = randomPath(rng, depth);
    if (rng() % 4 == 0) {
        op.condition = randomPath(rng, depth);
    }
    return StateFormula::probabilityOperator(std::move(op));
}

StateFormulaPtr randomState(std::mt19937_64& rng, int depth) {
    unsigned const choice = depth <= 0 ? rng() % 3 : rng() % 7;
    switch (choice) {
        case 0: return StateFormula::labelAtom("l" + std::to_string(rng() % 4));
        case 1: return StateFormula::boolean(rng() % 2 == 0);
        case 2: {
            prism::TokenCursor cursor(prism::tokenize(rng() % 2 == 0 ? "x >= 2" : "b & !(y = x + 1)"));
            return StateFormula::predicateAtom(prism::parseExpression(cursor));
        }
        case 3: return StateFormula::negation(randomState(rng, depth - 1));
        case 4: return StateFormula::conjunction(randomState(rng, depth - 1), randomState(rng, depth - 1));
        case 5: return StateFormula::disjunction(randomState(rng, depth - 1), randomState(rng, depth - 1));
        default: return randomOperator(rng, depth - 1);
    }
}

}  // namespace

TEST(PropertyParserTest, RandomFormulasSurvivePrintAndParse) {
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 2000; ++round) {
        std::string const source = toString(*randomOperator(rng, 4));
        Property const parsed = parseProperty(source);
        std::string const printed = toString(*parsed.formula);
        Property const reparsed = parseProperty(printed);
        ASSERT_TRUE(equal(parsed.formula, reparsed.formula)) << source << " printed as " << printed;
    }
}

TEST(PropertyParserTest, FuzzedPropertiesOnlyRaiseSyntaxErrors) {
    std::mt19937_64 rng(77);
    std::string const alphabet = "PRXFGUC[]{}()<=>?!&|\"ab 0.5123minax";
    for (int round = 0; round < 5000; ++round) {
        std::string text = toString(*randomOperator(rng, 3));
        int const edits = 1 + static_cast<int>(rng() % 3);
        for (int e = 0; e < edits && !text.empty(); ++e) {
            std::size_t const at = rng() % text.size();
            switch (rng() % 3) {
                case 0: text[at] = alphabet[rng() % alphabet.size()]; break;
                case 1: text.erase(at, 1); break;
                default: text.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
            }
        }
        try {
            parseProperty(text);
        } catch (SourceError const& e) {
            EXPECT_TRUE(e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::UnknownCharacter) << text;
            EXPECT_GE(e.line(), 1u);
        } catch (Error const& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidArgument) << text << ": " << e.what();
        }
    }
}

namespace {

models::StateLabeling threeStateLabels() {
    models::StateLabeling labeling(3);
    labeling.addLabel("a", BitVector(3, {0, 1}));
    labeling.addLabel("b", BitVector(3, {1, 2}));
    return labeling;
}

StateFormulaPtr resolvedTarget(std::string const& property, ResolutionContext const& context) {
    auto const resolved = resolve(parseProperty(property).formula, context);
    return resolved->probability->path.right;
}

}  // namespace

TEST(ResolverTest, LabelsBecomeStateSets) {
    auto const labeling = threeStateLabels();
    ResolutionContext const context{models::ModelKind::Dtmc, &labeling};
    auto const target = resolvedTarget("P=? [ F \"a\" ]", context);
    ASSERT_EQ(target->kind, StateFormula::Kind::States);
    EXPECT_EQ(target->states, BitVector(3, {0, 1}));
}

TEST(ResolverTest, BooleanStructureIsFolded) {
    auto const labeling = threeStateLabels();
    ResolutionContext const context{models::ModelKind::Dtmc, &labeling};
    EXPECT_EQ(resolvedTarget("P=? [ F !\"a\" & \"b\" ]", context)->states, BitVector(3, {2}));
    EXPECT_EQ(resolvedTarget("P=? [ F \"a\" | \"b\" ]", context)->states, BitVector(3, true));
    EXPECT_EQ(resolvedTarget("P=? [ F false ]", context)->states, BitVector(3));
    auto const nested = resolvedTarget("P=? [ F \"a\" & P>0.5 [ X \"b\" ] ]", context);
    ASSERT_EQ(nested->kind, StateFormula::Kind::And);
    EXPECT_EQ(nested->operands[0]->kind, StateFormula::Kind::States);
    ASSERT_EQ(nested->operands[1]->kind, StateFormula::Kind::Probability);
    EXPECT_EQ(nested->operands[1]->probability->path.right->states, BitVector(3, {1, 2}));
}

TEST(ResolverTest, Errors) {
    auto const labeling = threeStateLabels();
    ResolutionContext const dtmc{models::ModelKind::Dtmc, &labeling};
    ResolutionContext const mdp{models::ModelKind::Mdp, &labeling};
    EXPECT_EQ(codeOf([&] { resolve(parseProperty("P=? [ F \"zzz\" ]").formula, dtmc); }), ErrorCode::UnknownLabel);
    EXPECT_EQ(codeOf([&] { resolve(parseProperty("P=? [ F (x=1) ]").formula, dtmc); }), ErrorCode::PredicateWithoutStateMap);
    EXPECT_EQ(codeOf([&] { resolve(parseProperty("P=? [ F \"a\" ]").formula, mdp); }), ErrorCode::OptimumMissingForMdp);
    EXPECT_EQ(codeOf([&] { resolve(parseProperty("Rmin=? [ C<=1 ]").formula, dtmc); }), ErrorCode::OptimumGivenForDeterministic);
    EXPECT_EQ(codeOf([&] { resolve(parseProperty("Pmax=? [ F P>0.5 [ X \"a\" ] ]").formula, mdp); }), ErrorCode::OptimumMissingForMdp);
    EXPECT_NO_THROW(resolve(parseProperty("Pmax=? [ F Pmin>0.5 [ X \"a\" ] ]").formula, mdp));
}

TEST(ResolverTest, PredicatesUseTheStateMap) {
    auto const program = prism::typecheck(prism::parseProgram(io::readFile(std::string(STORMLET_CORPUS_DIR) + "/die.pm")));
    auto const explored = prism::explore<double>(program);
    ResolutionContext const context{models::ModelKind::Dtmc, &explored.model.labeling(), &program, &explored.states};
    auto const viaPredicate = resolvedTarget("P=? [ F (s=7 & d=6) ]", context);
    EXPECT_EQ(viaPredicate->states, explored.model.labeling().getStates("six"));
    EXPECT_EQ(codeOf([&] { resolvedTarget("P=? [ F (s+1) ]", context); }), ErrorCode::TypeMismatch);
    EXPECT_EQ(codeOf([&] { resolvedTarget("P=? [ F (q=1) ]", context); }), ErrorCode::UndefinedConstant);
}
