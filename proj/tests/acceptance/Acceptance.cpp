// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ModelFactory.h"
#include "Oracles.h"
#include "Pipeline.h"
#include "stormlet/cli/Cli.h"
#include "stormlet/graph/Precomputation.h"
#include "stormlet/solver/FoxGlynn.h"
#include "stormlet/solver/LinearEquationSolver.h"

using namespace stormlet;
using models::ModelKind;
using solver::LinearMethod;
using solver::MinMaxMethod;
using solver::OptimizationDirection;

namespace {

constexpr double kDieTolerance = 1e-6;
constexpr double kDieSumTolerance = 1e-9;
constexpr double kDieSumPrecision = 1e-10;
constexpr double kDieSeconds = 1.0;
constexpr double kSolverPrecision = 1e-6;
constexpr double kSolverAgreement = 2 * kSolverPrecision;
constexpr double kSolverSeconds = 10.0;
constexpr double kMdpTolerance = 1e-6;
constexpr double kMdpPrecision = 1e-8;
constexpr double kMdpSeconds = 30.0;
constexpr double kBoundedTolerance = 1e-12;
constexpr double kCtmcTolerance = 1e-6;
constexpr double kConditionalTolerance = 1e-12;
constexpr double kRoundTripTolerance = 1e-12;
constexpr double kFoxGlynnEpsilon = 1e-10;

std::vector<std::string> const kCorpus{"die", "gamble", "queue", "sync"};

/// Collects the first few failure messages of a criterion.
class Criterion {
   public:
    void fail(std::string const& message) {
        if (failures_++ < 5) {
            messages_ << "\n    " << message;
        }
    }
    void expect(bool condition, std::string const& message) {
        if (!condition) {
            fail(message);
        }
    }
    void expectNear(double actual, double expected, double tolerance, std::string const& what) {
        if (!(std::fabs(actual - expected) <= tolerance)) {
            std::ostringstream out;
            out.precision(17);
            out << what << ": got " << actual << ", expected " << expected << " (tolerance " << tolerance << ")";
            fail(out.str());
        }
    }
    bool passed() const {
        return failures_ == 0;
    }
    std::string details() const {
        return failures_ == 0 ? "" : " [" + std::to_string(failures_) + " failure(s)]" + messages_.str();
    }

   private:
    std::size_t failures_ = 0;
    std::ostringstream messages_;
};

double secondsSince(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string describeSeconds(double seconds) {
    std::ostringstream out;
    out.precision(3);
    out << seconds << " s";
    return out.str();
}

BitVector bits(std::vector<bool> const& values) {
    return test::toBitVector(values);
}

std::vector<bool> randomNonEmpty(std::mt19937_64& rng, std::size_t n, double p) {
    auto subset = test::randomSubset(rng, n, p);
    subset[rng() % n] = true;
    return subset;
}

solver::SolverEnvironment environment(LinearMethod linear, MinMaxMethod minMax, double precision) {
    solver::SolverEnvironment env;
    env.linearMethod = linear;
    env.minMaxMethod = minMax;
    env.precision = precision;
    return env;
}

/// CTMC from a dense rate matrix; absorbing states get a rate-1 self-loop.
models::Model<double> ctmc(std::vector<std::vector<double>> const& rates) {
    std::size_t const n = rates.size();
    std::vector<storage::MatrixEntry<double>> entries;
    std::vector<double> exit(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        for (double r : rates[s]) {
            exit[s] += r;
        }
        if (exit[s] == 0.0) {
            exit[s] = 1.0;
            entries.push_back({s, s, 1.0});
            continue;
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (rates[s][t] > 0.0) {
                entries.push_back({s, t, rates[s][t] / exit[s]});
            }
        }
    }
    return models::Model<double>::deterministic(ModelKind::Ctmc, storage::buildSparse(std::move(entries), n, n), models::StateLabeling(n), BitVector(n, {0}), {},
                                                exit);
}

std::string runCli(std::vector<std::string> args, int& code) {
    args.insert(args.begin(), "stormlet");
    std::ostringstream out;
    std::ostringstream err;
    code = cli::runMain(args, out, err);
    return out.str();
}

/// 1. Knuth-Yao die, exact and iterative.
void dieEndToEnd(Criterion& c) {
    auto const start = std::chrono::steady_clock::now();
    auto const exact = test::buildCorpus<Rational>("die.pm");
    auto const approx = test::buildCorpus<double>("die.pm");
    c.expect(exact.check("P=? [ F \"six\" ]").values[0] == Rational(1, 6), "exact P(F six) is not 1/6");
    c.expectNear(approx.check("P=? [ F \"six\" ]").values[0], 1.0 / 6.0, kDieTolerance, "iterative P(F six)");
    solver::SolverEnvironment fine;
    fine.precision = kDieSumPrecision;
    Rational exactTotal = 0;
    double total = 0.0;
    for (auto const* face : {"one", "two", "three", "four", "five", "six"}) {
        std::string const property = std::string("P=? [ F \"") + face + "\" ]";
        exactTotal += exact.check(property).values[0];
        total += approx.check(property, fine).values[0];
    }
    c.expect(exactTotal == 1, "exact outcome probabilities sum to " + exactTotal.get_str());
    c.expectNear(total, 1.0, kDieSumTolerance, "iterative outcome sum");
    int code = 0;
    auto const output = runCli({"--prism", std::string(STORMLET_CORPUS_DIR) + "/die.pm", "--prop", "P=? [ F \"six\" ]", "--exact"}, code);
    c.expect(code == 0 && output.find("Result (state 0): 1/6") != std::string::npos, "CLI exact output: " + output);
    double const seconds = secondsSince(start);
    c.expect(seconds < kDieSeconds, "runtime " + describeSeconds(seconds));
}

/// Reachability system x = A x + b over the states that can reach the target.
solver::LinearSystem<Rational> randomSubstochasticSystem(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        auto const dense = test::randomDenseModel(rng, n, 1);
        auto const target = randomNonEmpty(rng, n, 0.15);
        std::vector<std::vector<std::size_t>> successors(n);
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = 0; t < n; ++t) {
                if (sgn(dense.probabilities[s][t]) != 0) {
                    successors[s].push_back(t);
                }
            }
        }
        auto const reach = test::bfsCanReach(successors, std::vector<bool>(n, true), target);
        std::vector<std::size_t> index(n, n);
        std::vector<std::size_t> unknowns;
        for (std::size_t s = 0; s < n; ++s) {
            if (reach[s] && !target[s]) {
                index[s] = unknowns.size();
                unknowns.push_back(s);
            }
        }
        if (unknowns.empty()) {
            continue;
        }
        std::vector<storage::MatrixEntry<Rational>> triples;
        std::vector<Rational> b(unknowns.size(), Rational(0));
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            for (auto t : successors[unknowns[i]]) {
                auto const& p = dense.probabilities[unknowns[i]][t];
                if (target[t]) {
                    b[i] += p;
                } else if (index[t] < n) {
                    triples.push_back({i, index[t], p});
                }
            }
        }
        return {storage::buildSparse(std::move(triples), unknowns.size(), unknowns.size()), std::move(b)};
    }
}

/// 2. Jacobi, Gauss-Seidel and exact solutions agree.
void solverCrossValidation(Criterion& c) {
    std::mt19937_64 rng(2);
    double solving = 0.0;
    for (int round = 0; round < 200; ++round) {
        std::size_t const n = 2 + rng() % 49;
        auto const exactSystem = randomSubstochasticSystem(rng, n);
        solver::LinearSystem<double> const system{storage::convertMatrix<double>(exactSystem.matrix), storage::convertVector<double>(exactSystem.offset)};
        auto const start = std::chrono::steady_clock::now();
        auto const exact = storage::convertVector<double>(solver::solveLinear(exactSystem, {}).x);
        auto const jacobi = solver::solveLinear(system, environment(LinearMethod::Jacobi, MinMaxMethod::ValueIteration, kSolverPrecision)).x;
        auto const gaussSeidel = solver::solveLinear(system, environment(LinearMethod::GaussSeidel, MinMaxMethod::ValueIteration, kSolverPrecision)).x;
        solving += secondsSince(start);
        for (std::size_t i = 0; i < exact.size(); ++i) {
            std::string const where = "round " + std::to_string(round) + " state " + std::to_string(i);
            c.expectNear(jacobi[i], exact[i], kSolverAgreement, where + " jacobi vs exact");
            c.expectNear(gaussSeidel[i], exact[i], kSolverAgreement, where + " gauss-seidel vs exact");
            c.expectNear(jacobi[i], gaussSeidel[i], kSolverAgreement, where + " jacobi vs gauss-seidel");
        }
    }
    c.expect(solving < kSolverSeconds, "runtime " + describeSeconds(solving));
}

/// 3. Value and policy iteration match scheduler enumeration.
void mdpOracle(Criterion& c) {
    std::mt19937_64 rng(3);
    double checking = 0.0;
    for (int round = 0; round < 100; ++round) {
        std::size_t const n = 2 + rng() % 5;
        auto const dense = test::randomDenseModel(rng, n, 3);
        auto const target = randomNonEmpty(rng, n, 0.3);
        std::vector<bool> const all(n, true);
        auto const probabilities = test::mdpUntilByEnumeration(dense, all, target);
        auto const rewards = test::mdpRewardByEnumeration(dense, target);
        auto const model = test::toModel<double>(dense, ModelKind::Mdp, {}, true);
        auto const& rewardModel = model.rewardModel("r");
        for (auto method : {MinMaxMethod::ValueIteration, MinMaxMethod::PolicyIteration}) {
            auto env = environment(LinearMethod::GaussSeidel, method, kMdpPrecision);
            env.criterion = solver::ConvergenceCriterion::Absolute;
            std::string const label = "round " + std::to_string(round) + (method == MinMaxMethod::ValueIteration ? " vi" : " pi");
            auto const start = std::chrono::steady_clock::now();
            auto const pmax = modelchecker::checkUntilMdp(model, BitVector(n, true), bits(target), OptimizationDirection::Maximize, env);
            auto const pmin = modelchecker::checkUntilMdp(model, BitVector(n, true), bits(target), OptimizationDirection::Minimize, env);
            auto const rmin = modelchecker::checkReachRewardMdp(model, rewardModel, bits(target), OptimizationDirection::Minimize, env);
            auto const rmax = modelchecker::checkReachRewardMdp(model, rewardModel, bits(target), OptimizationDirection::Maximize, env);
            checking += secondsSince(start);
            for (std::size_t s = 0; s < n; ++s) {
                std::string const where = label + " state " + std::to_string(s);
                c.expectNear(pmax.values[s], probabilities.max[s].get_d(), kMdpTolerance, where + " Pmax");
                c.expectNear(pmin.values[s], probabilities.min[s].get_d(), kMdpTolerance, where + " Pmin");
                auto compareReward = [&](modelchecker::CheckResult<double> const& result, std::optional<Rational> const& expected, char const* name) {
                    if (!expected) {
                        c.expect(result.isInfinite(s), where + " " + name + " should be infinite");
                    } else {
                        c.expect(!result.isInfinite(s), where + " " + name + " should be finite");
                        c.expectNear(result.values[s], expected->get_d(), kMdpTolerance, where + " " + name);
                    }
                };
                compareReward(rmin, rewards.min[s], "Rmin");
                compareReward(rmax, rewards.max[s], "Rmax");
            }
        }
    }
    c.expect(checking < kMdpSeconds, "runtime " + describeSeconds(checking));
}

/// 4. Step-bounded until against path enumeration.
void boundedUntil(Criterion& c) {
    std::mt19937_64 rng(4);
    for (int round = 0; round < 50; ++round) {
        std::size_t const n = 2 + rng() % 4;
        auto const dense = test::randomDenseModel(rng, n, 1);
        auto const model = test::toModel<double>(dense, ModelKind::Dtmc);
        auto const p = test::toDouble(test::inducedChain(dense, std::vector<std::size_t>(n, 0)));
        auto const left = test::randomSubset(rng, n, 0.7);
        auto const right = test::randomSubset(rng, n, 0.3);
        for (std::uint64_t k = 0; k <= 6; ++k) {
            auto const result = modelchecker::checkBoundedUntil(model, bits(left), bits(right), k);
            for (std::size_t s = 0; s < n; ++s) {
                c.expectNear(result.values[s], test::boundedUntilByPaths(p, left, right, s, k), kBoundedTolerance,
                             "round " + std::to_string(round) + " k " + std::to_string(k) + " state " + std::to_string(s));
            }
        }
    }
}

/// 5. Time-bounded until on CTMCs against closed forms.
void ctmcClosedForms(Criterion& c) {
    for (auto [lambda, t] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {5.0, 0.5}, {0.1, 10.0}}) {
        auto const model = ctmc({{0.0, lambda}, {0.0, 0.0}});
        auto const result = modelchecker::checkTimeBoundedUntilCtmc(model, BitVector(2, true), bits({false, true}), t);
        c.expectNear(result.values[0], 1.0 - std::exp(-lambda * t), kCtmcTolerance, "lambda " + std::to_string(lambda) + " t " + std::to_string(t));
    }
    // Series 0 -a-> 1 -b-> 2: P(T1 + T2 <= t) = 1 - (b e^{-at} - a e^{-bt}) / (b - a).
    for (auto [a, b, t] : std::vector<std::tuple<double, double, double>>{{2.0, 3.0, 1.0}, {1.0, 4.0, 0.7}, {0.5, 0.2, 6.0}}) {
        auto const model = ctmc({{0.0, a, 0.0}, {0.0, 0.0, b}, {0.0, 0.0, 0.0}});
        auto const result = modelchecker::checkTimeBoundedUntilCtmc(model, BitVector(3, true), bits({false, false, true}), t);
        double const expected = 1.0 - (b * std::exp(-a * t) - a * std::exp(-b * t)) / (b - a);
        c.expectNear(result.values[0], expected, kCtmcTolerance, "series a " + std::to_string(a) + " b " + std::to_string(b));
        c.expectNear(result.values[1], 1.0 - std::exp(-b * t), kCtmcTolerance, "series second stage");
    }
}

/// 6. Conditional probabilities.
void conditional(Criterion& c) {
    test::DenseModel branches;
    branches.states = 4;
    branches.choicesOf = {{0}, {1}, {2}, {3}};
    branches.probabilities = {{0, Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (auto& row : branches.probabilities) {
        for (auto& value : row) {
            value.canonicalize();
        }
    }
    branches.stateReward.assign(4, Rational(0));
    branches.choiceReward.assign(4, Rational(0));
    auto const exactModel = test::toModel<Rational>(branches, ModelKind::Dtmc, {{"a", {false, true, false, false}}, {"b", {false, true, true, false}}});
    auto const exact = test::checkOn(exactModel, "P=? [ F \"a\" || F \"b\" ]");
    c.expect(exact.values[0] == Rational(1, 2), "three-branch example gives " + exact.values[0].get_str());

    // Numerator P(F a & F b) = P(F a) + P(F b) - P(F (a | b)), denominator P(F b).
    std::mt19937_64 rng(6);
    auto const env = environment(LinearMethod::Exact, MinMaxMethod::ValueIteration, kSolverPrecision);
    for (int round = 0; round < 50; ++round) {
        std::size_t const n = 2 + rng() % 8;
        auto const dense = test::randomDenseModel(rng, n, 1);
        auto const a = test::randomSubset(rng, n, 0.3);
        auto const b = test::randomSubset(rng, n, 0.3);
        auto const model = test::toModel<double>(dense, ModelKind::Dtmc, {{"a", a}, {"b", b}});
        auto const result = test::checkOn(model, "P=? [ F \"a\" || F \"b\" ]", env);
        auto const pa = test::checkOn(model, "P=? [ F \"a\" ]", env).values;
        auto const pb = test::checkOn(model, "P=? [ F \"b\" ]", env).values;
        auto const pab = test::checkOn(model, "P=? [ F (\"a\" | \"b\") ]", env).values;
        for (std::size_t s = 0; s < n; ++s) {
            std::string const where = "round " + std::to_string(round) + " state " + std::to_string(s);
            if (pb[s] == 0.0) {
                c.expect(result.isUndefined(s), where + " should be undefined");
                continue;
            }
            c.expectNear(result.values[s], (pa[s] + pb[s] - pab[s]) / pb[s], kConditionalTolerance, where);
        }
    }
}

template<typename ValueType>
bool sameValue(modelchecker::CheckResult<ValueType> const& left, modelchecker::CheckResult<ValueType> const& right, std::size_t s) {
    if (left.isInfinite(s) || right.isInfinite(s) || left.isUndefined(s) || right.isUndefined(s)) {
        return left.isInfinite(s) == right.isInfinite(s) && left.isUndefined(s) == right.isUndefined(s);
    }
    if (left.truth.has_value() != right.truth.has_value() || (left.truth && left.truth->get(s) != right.truth->get(s))) {
        return false;
    }
    if constexpr (std::is_same_v<ValueType, Rational>) {
        return left.values[s] == right.values[s];
    } else {
        return std::fabs(left.values[s] - right.values[s]) <= kRoundTripTolerance;
    }
}

template<typename ValueType>
void roundTripOne(Criterion& c, std::string const& name) {
    auto const built = test::buildCorpus<ValueType>(name + ".pm");
    auto const bundle = io::writeModel(built.explored.model);
    auto const reloaded = io::loadExplicit<ValueType>(bundle);
    c.expect(io::writeModel(reloaded) == bundle, name + ": rewriting the reloaded model changes the text");
    c.expect(io::writeModel(test::buildCorpus<ValueType>(name + ".pm").explored.model) == bundle, name + ": exploration is not deterministic");
    // State numbering is preserved, so predicates resolve against the explored valuations.
    logic::ResolutionContext const context{reloaded.kind(), &reloaded.labeling(), &built.program, &built.explored.states};
    for (auto const& property : logic::parsePropertyFile(test::corpusText(name + ".props"))) {
        modelchecker::CheckResult<ValueType> direct;
        try {
            direct = built.check(property.text);
        } catch (Error const& e) {
            c.expect(std::is_same_v<ValueType, Rational> && e.code() == ErrorCode::UnsupportedCombination, name + ": " + property.text + ": " + e.what());
            continue;
        }
        auto const again = modelchecker::check(reloaded, logic::resolve(property.formula, context));
        for (std::size_t s = 0; s < direct.values.size(); ++s) {
            c.expect(sameValue(direct, again, s), name + ": " + property.text + " differs at state " + std::to_string(s));
        }
    }
}

/// 7. Explore, write, parse, re-check; outputs are reproducible.
void roundTrip(Criterion& c) {
    for (auto const& name : kCorpus) {
        roundTripOne<double>(c, name);
        roundTripOne<Rational>(c, name);
        std::string const model = std::string(STORMLET_CORPUS_DIR) + "/" + name + ".pm";
        std::string const props = std::string(STORMLET_CORPUS_DIR) + "/" + name + ".props";
        for (bool exact : {false, true}) {
            std::vector<std::string> args{"--prism", model, "--prop-file", props};
            if (exact) {
                args.push_back("--exact");
            }
            int firstCode = 0;
            int secondCode = 0;
            auto const first = runCli(args, firstCode);
            auto const second = runCli(args, secondCode);
            c.expect(firstCode == secondCode && first == second, name + (exact ? " (exact)" : "") + ": CLI output differs between runs");
            c.expect(exact || firstCode == 0, name + ": CLI exit code " + std::to_string(firstCode));
        }
    }
}

/// 8. prob0/prob1 agree with exact values; single-choice MDPs match DTMCs.
void precomputation(Criterion& c) {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 500; ++round) {
        std::size_t const n = 1 + rng() % 12;
        auto const dense = test::randomDenseModel(rng, n, 1);
        auto const safe = test::randomSubset(rng, n, 0.7);
        auto const target = test::randomSubset(rng, n, 0.25);
        std::string const where = "round " + std::to_string(round);

        // Exact solution of x = A x + b over the safe non-target states that reach the target.
        std::vector<std::vector<std::size_t>> successors(n);
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = 0; t < n; ++t) {
                if (sgn(dense.probabilities[s][t]) != 0) {
                    successors[s].push_back(t);
                }
            }
        }
        auto const reach = test::bfsCanReach(successors, safe, target);
        std::vector<std::size_t> index(n, n);
        std::vector<std::size_t> unknowns;
        for (std::size_t s = 0; s < n; ++s) {
            if (reach[s] && !target[s]) {
                index[s] = unknowns.size();
                unknowns.push_back(s);
            }
        }
        std::vector<storage::MatrixEntry<Rational>> triples;
        std::vector<Rational> b(unknowns.size(), Rational(0));
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            for (auto t : successors[unknowns[i]]) {
                if (target[t]) {
                    b[i] += dense.probabilities[unknowns[i]][t];
                } else if (index[t] < n) {
                    triples.push_back({i, index[t], dense.probabilities[unknowns[i]][t]});
                }
            }
        }
        std::vector<Rational> values(n, Rational(0));
        if (!unknowns.empty()) {
            auto const x = solver::solveLinearExact(storage::buildSparse(std::move(triples), unknowns.size(), unknowns.size()), b);
            for (std::size_t i = 0; i < unknowns.size(); ++i) {
                values[unknowns[i]] = x[i];
            }
        }
        for (std::size_t s = 0; s < n; ++s) {
            if (target[s]) {
                values[s] = 1;
            }
        }

        auto const dtmc = test::toModel<double>(dense, ModelKind::Dtmc);
        auto const zero = graph::prob0(dtmc, bits(safe), bits(target));
        auto const one = graph::prob1(dtmc, bits(safe), bits(target), zero);
        for (std::size_t s = 0; s < n; ++s) {
            c.expect(zero.get(s) == (values[s] == 0), where + " prob0 at state " + std::to_string(s) + ", exact value " + values[s].get_str());
            c.expect(one.get(s) == (values[s] == 1), where + " prob1 at state " + std::to_string(s) + ", exact value " + values[s].get_str());
        }

        auto const mdp = test::toModel<double>(dense, ModelKind::Mdp);
        auto const max = graph::prob01Max(mdp, bits(safe), bits(target));
        auto const min = graph::prob01Min(mdp, bits(safe), bits(target));
        c.expect(max.prob0 == zero && max.prob1 == one, where + " prob01Max differs from DTMC prob0/prob1");
        c.expect(min.prob0 == zero && min.prob1 == one, where + " prob01Min differs from DTMC prob0/prob1");
    }
}

/// 9. Fox-Glynn weights and truncation.
void foxGlynn(Criterion& c) {
    for (double lambda : {0.5, 1.0, 10.0, 100.0, 1000.0}) {
        auto const result = solver::foxGlynn(lambda, kFoxGlynnEpsilon);
        std::string const where = "lambda " + std::to_string(lambda);
        long double normalized = 0.0L;
        long double covered = 0.0L;
        for (auto k = result.left; k <= result.right; ++k) {
            normalized += result.weights[k - result.left] / result.totalWeight;
            covered += test::poissonPmf(lambda, k);
        }
        c.expectNear(static_cast<double>(normalized), 1.0, kFoxGlynnEpsilon, where + " normalized sum");
        long double const tail = 1.0L - covered;
        c.expect(tail <= kFoxGlynnEpsilon, where + " tail mass " + std::to_string(static_cast<double>(tail)));
    }
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<void(Criterion&)>>> const criteria{
        {"Knuth-Yao die end-to-end", dieEndToEnd},
        {"solver cross-validation", solverCrossValidation},
        {"MDP oracle equivalence", mdpOracle},
        {"bounded until vs path enumeration", boundedUntil},
        {"CTMC uniformization", ctmcClosedForms},
        {"conditional probability", conditional},
        {"round-trip stability", roundTrip},
        {"precomputation soundness", precomputation},
        {"Fox-Glynn truncation", foxGlynn},
    };
    bool allPassed = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion criterion;
        auto const start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(criterion);
        } catch (std::exception const& e) {
            criterion.fail(std::string("exception: ") + e.what());
        }
        double const seconds = secondsSince(start);
        allPassed = allPassed && criterion.passed();
        std::cout << (criterion.passed() ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << describeSeconds(seconds) << ")"
                  << criterion.details() << std::endl;
    }
    return allPassed ? 0 : 1;
}
