#include <gtest/gtest.h>

#include "stormlet/models/Model.h"
#include "stormlet/utility/Numbers.h"

using namespace stormlet;
using models::Model;
using models::ModelKind;
using models::StateLabeling;

namespace {

template<typename Fn>
ErrorCode codeOf(Fn&& fn) {
    try {
        fn();
    } catch (Error const& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

Model<double> coin(double heads) {
    auto matrix = storage::buildSparse<double>({{0, 1, heads}, {0, 2, 1.0 - heads}, {1, 1, 1.0}, {2, 2, 1.0}}, 3, 3);
    StateLabeling labeling(3);
    labeling.addLabel("heads", BitVector(3, {1}));
    return Model<double>::deterministic(ModelKind::Dtmc, std::move(matrix), std::move(labeling), BitVector(3, {0}));
}

}  // namespace

TEST(ModelTest, DeterministicModelBasics) {
    auto const model = coin(0.5);
    EXPECT_EQ(model.numberOfStates(), 3u);
    EXPECT_EQ(model.numberOfChoices(), 3u);
    EXPECT_EQ(model.numberOfTransitions(), 4u);
    EXPECT_EQ(model.labeling().getStates("heads"), BitVector(3, {1}));
}

TEST(ModelTest, NonStochasticRowIsRejected) {
    EXPECT_EQ(codeOf([] {
                  auto matrix = storage::buildSparse<double>({{0, 1, 0.5}, {1, 1, 1.0}}, 2, 2);
                  Model<double>::deterministic(ModelKind::Dtmc, std::move(matrix), StateLabeling(2), BitVector(2, {0}));
              }),
              ErrorCode::NonStochasticRow);
}

TEST(ModelTest, ToleranceAcceptsTinyRoundoff) {
    EXPECT_NO_THROW(coin(0.1 + 0.2 - 0.3 + 0.5));
}

TEST(ModelTest, RationalRowsMustSumExactly) {
    EXPECT_EQ(codeOf([] {
                  auto matrix = storage::buildSparse<Rational>({{0, 0, Rational(1, 3)}, {0, 1, Rational(666666667, 1000000000)}, {1, 1, Rational(1)}}, 2, 2);
                  Model<Rational>::deterministic(ModelKind::Dtmc, std::move(matrix), StateLabeling(2), BitVector(2, {0}));
              }),
              ErrorCode::NonStochasticRow);
}

TEST(ModelTest, EmptyRowIsDeadlock) {
    EXPECT_EQ(codeOf([] {
                  auto matrix = storage::buildSparse<double>({{0, 1, 1.0}}, 2, 2);
                  Model<double>::deterministic(ModelKind::Dtmc, std::move(matrix), StateLabeling(2), BitVector(2, {0}));
              }),
              ErrorCode::DeadlockState);
}

TEST(ModelTest, MissingInitialStateIsRejected) {
    EXPECT_EQ(codeOf([] {
                  auto matrix = storage::buildSparse<double>({{0, 0, 1.0}}, 1, 1);
                  Model<double>::deterministic(ModelKind::Dtmc, std::move(matrix), StateLabeling(1), BitVector(1));
              }),
              ErrorCode::InvalidModel);
}

TEST(ModelTest, MdpChoicesAndConversion) {
    auto matrix = storage::buildSparse<Rational>({{0, 0, Rational(1)}, {1, 1, Rational(1)}, {2, 1, Rational(1)}}, 3, 2);
    Model<Rational> const mdp(ModelKind::Mdp, std::move(matrix), {0, 2, 3}, StateLabeling(2), BitVector(2, {0}));
    EXPECT_EQ(mdp.choiceCount(0), 2u);
    EXPECT_EQ(mdp.choiceCount(1), 1u);
    auto const asDouble = models::convertModel<double>(mdp);
    EXPECT_EQ(asDouble.matrix().at(1, 1), 1.0);
    EXPECT_EQ(models::convertModel<Rational>(asDouble), mdp);
}

TEST(ModelTest, NegativeRewardsAreRejected) {
    EXPECT_EQ(codeOf([] { models::RewardModel<double>("r", std::vector<double>{1.0, -0.5}, std::nullopt); }), ErrorCode::NegativeReward);
}

TEST(ModelTest, RewardModelLookup) {
    auto matrix = storage::buildSparse<double>({{0, 0, 1.0}}, 1, 1);
    std::map<std::string, models::RewardModel<double>> rewards;
    rewards.emplace("steps", models::RewardModel<double>("steps", std::vector<double>{1.0}, std::nullopt));
    Model<double> const model(ModelKind::Dtmc, std::move(matrix), {0, 1}, StateLabeling(1), BitVector(1, {0}), std::move(rewards));
    EXPECT_EQ(model.rewardModel("").name(), "steps");
    EXPECT_EQ(model.rewardModel("steps").name(), "steps");
    EXPECT_EQ(codeOf([&] { model.rewardModel("other"); }), ErrorCode::MissingRewardModel);
}

TEST(ModelTest, CtmcNeedsPositiveRates) {
    EXPECT_EQ(codeOf([] {
                  auto matrix = storage::buildSparse<double>({{0, 0, 1.0}}, 1, 1);
                  Model<double>(ModelKind::Ctmc, std::move(matrix), {0, 1}, StateLabeling(1), BitVector(1, {0}), {}, std::vector<double>{0.0});
              }),
              ErrorCode::InvalidModel);
}

TEST(ModelTest, LabelingErrors) {
    StateLabeling labeling(2);
    labeling.addLabel("a");
    EXPECT_EQ(codeOf([&] { labeling.addLabel("a"); }), ErrorCode::DuplicateName);
    EXPECT_EQ(codeOf([&] { labeling.addLabel("b", BitVector(3)); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(codeOf([&] { labeling.getStates("c"); }), ErrorCode::UnknownLabel);
}

TEST(BitVectorTest, SetOperations) {
    BitVector const a(70, {0, 3, 65});
    BitVector const b(70, {3, 4});
    EXPECT_EQ((a & b), BitVector(70, {3}));
    EXPECT_EQ((a | b), BitVector(70, {0, 3, 4, 65}));
    EXPECT_EQ((a - b), BitVector(70, {0, 65}));
    EXPECT_EQ((~a).count(), 67u);
    EXPECT_EQ(a.rank(65), 2u);
    EXPECT_EQ(a.toString(), "{0, 3, 65}");
    EXPECT_TRUE(BitVector(70, {3}).isSubsetOf(a));
    EXPECT_TRUE(BitVector(70, {1}).isDisjointFrom(a));
}

TEST(NumbersTest, RationalParsingAndFormatting) {
    EXPECT_EQ(utility::parseRational("1/3"), Rational(1, 3));
    EXPECT_EQ(utility::parseRational("0.25"), Rational(1, 4));
    EXPECT_EQ(utility::parseRational("1e-2"), Rational(1, 100));
    EXPECT_EQ(utility::parseRational("2.5E1"), Rational(25));
    EXPECT_EQ(utility::toRoundTripString(Rational(2, 4)), "1/2");
    EXPECT_EQ(utility::toRoundTripString(Rational(3)), "3");
    EXPECT_EQ(utility::toRoundTripString(0.1), "0.1");
    EXPECT_EQ(utility::parseDouble(utility::toRoundTripString(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(NumbersTest, DoubleToRationalIsExact) {
    EXPECT_EQ(utility::convertNumber<Rational>(0.5), Rational(1, 2));
    EXPECT_EQ(utility::convertNumber<Rational>(0.1).get_d(), 0.1);
    EXPECT_NE(utility::convertNumber<Rational>(0.1), Rational(1, 10));
}
