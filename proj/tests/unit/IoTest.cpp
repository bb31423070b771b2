#include <gtest/gtest.h>

#include <filesystem>

#include "mdpcheck/gen/Generators.h"
#include "mdpcheck/io/ModelFormat.h"
#include "mdpcheck/io/ReferenceResults.h"
#include "support/Expect.h"
#include "support/Fixtures.h"

using namespace mdpcheck;

namespace {

Rational q(std::string const& text) {
    return parseRational(text);
}

std::size_t parseErrorLine(std::string const& text) {
    try {
        io::parseModel(text);
    } catch (ParseError const& e) {
        return e.line();
    }
    return 0;
}

char const* const trapDocument = R"({
  "states": 5,
  "initial": 0,
  "labels": {"goal": [4]},
  "transitions": [
    [[[1, "1"]], [[2, 1]]],
    [[[4, "0.1"], [3, "9/10"]]],
    [[[4, "1/20"], [3, "1/20"], [0, "9/10"]]],
    [[[3, 1]]],
    [[[4, 1]]]
  ]
})";

}  // namespace

TEST(ParseModel, MinimalDocumentRoundTrips) {
    std::string const text = R"({"states": 1, "initial": 0, "labels": {}, "transitions": [[[[0, "1"]]]]})";
    auto mdp = io::parseModel(text);
    EXPECT_EQ(mdp.getNumberOfStates(), 1u);
    EXPECT_EQ(io::parseModel(io::writeModel(mdp)), mdp);
}

TEST(ParseModel, FractionsStayExact) {
    std::string const text = R"({"states": 2, "initial": 0, "transitions": [[[[0, "1/3"], [1, "2/3"]]], [[[1, 1]]]]})";
    auto mdp = io::parseModel(text);
    EXPECT_EQ(mdp.getTransitions(0, 0)[0].probability, Rational(1, 3));
}

TEST(ParseRational, LeadingZerosAreDecimal) {
    EXPECT_EQ(q("0.8"), Rational(4, 5));
    EXPECT_EQ(q("0.09"), Rational(9, 100));
    EXPECT_EQ(q("010/9"), Rational(10, 9));
    EXPECT_EQ(q("08e-1"), Rational(4, 5));
}

TEST(ParseModel, TrapDocumentMatchesGenerator) {
    EXPECT_EQ(io::parseModel(trapDocument), gen::genPiTrap(q("1/10")));
}

TEST(ParseModel, RewardsAreOptionalAndExact) {
    std::string const text = R"({"states": 2, "initial": 1, "rewards": {"0": "2.5"}, "transitions": [[[[1, 1]]], [[[1, 1]]]]})";
    auto mdp = io::parseModel(text);
    EXPECT_TRUE(mdp.hasRewards());
    EXPECT_EQ(mdp.getReward(0), q("5/2"));
    EXPECT_EQ(mdp.getReward(1), Rational(0));
    EXPECT_EQ(mdp.getInitialState(), 1u);
}

TEST(ParseModel, ErrorsCarryLineNumbers) {
    std::string badProbability = trapDocument;
    badProbability.replace(badProbability.find("\"9/10\"]]],\n    [[[3"), 6, "\"0.8\"");
    EXPECT_MDP_ERROR(io::parseModel(badProbability), ErrorCode::NonStochastic);

    std::string floatLiteral = trapDocument;
    floatLiteral.replace(floatLiteral.find("\"0.1\""), 5, "0.1");
    EXPECT_EQ(parseErrorLine(floatLiteral), 7u);

    std::string badSuccessor = trapDocument;
    badSuccessor.replace(badSuccessor.find("[[[3, 1]]]"), 10, "[[[-3, 1]]]");
    EXPECT_EQ(parseErrorLine(badSuccessor), 9u);

    std::string syntax = trapDocument;
    syntax.replace(syntax.find("\"labels\""), 8, "labels");
    EXPECT_EQ(parseErrorLine(syntax), 4u);

    EXPECT_EQ(parseErrorLine(R"({"states": 1, "initial": 0})"), 1u);
    EXPECT_EQ(parseErrorLine("{\"states\": 1,\n \"initial\": 3,\n \"transitions\": [[[[0, 1]]]]}"), 2u);
    EXPECT_EQ(parseErrorLine("{\"states\": 1, \"initial\": 0, \"extra\": 1, \"transitions\": [[[[0, 1]]]]}"), 1u);
    EXPECT_EQ(parseErrorLine(R"({"states": 1, "initial": 0, "transitions": [[[[0, "x"]]]]})"), 1u);
}

TEST(WriteModel, CanonicalLowestTerms) {
    std::string const text = R"({"states": 2, "initial": 0, "transitions": [[[[1, "2/4"], [0, "2/4"]]], [[[1, 1]]]]})";
    auto written = io::writeModel(io::parseModel(text));
    EXPECT_NE(written.find("[0, \"1/2\"], [1, \"1/2\"]"), std::string::npos) << written;
    EXPECT_EQ(written.find("2/4"), std::string::npos);
}

TEST(WriteModel, RoundTripAndIdempotence) {
    std::vector<model::SparseMdp> models{gen::genHardMn(5), gen::genPiTrap(q("1/10"))};
    for (auto const& instance : fixtures::randomSweep(40)) {
        models.push_back(instance.mdp);
    }
    for (auto const& mdp : models) {
        auto text = io::writeModel(mdp);
        auto parsed = io::parseModel(text);
        EXPECT_EQ(parsed, mdp);
        EXPECT_EQ(io::writeModel(parsed), text);
    }
}

TEST(WriteModel, StructurallyIdenticalModelsGiveIdenticalBytes) {
    auto first = io::writeModel(io::parseModel(trapDocument));
    auto second = io::writeModel(gen::genPiTrap(q("1/10")));
    EXPECT_EQ(first, second);
}

TEST(ModelFiles, WriteAndReadBack) {
    auto path = std::filesystem::temp_directory_path() / "mdpcheck-io-test.json";
    auto mdp = gen::genHardMn(4);
    io::writeModelFile(path, mdp);
    EXPECT_EQ(io::readModelFile(path), mdp);
    std::filesystem::remove(path);
    EXPECT_MDP_ERROR(io::readModelFile(path), ErrorCode::BadParameter);
}

TEST(References, ParseAndWrite) {
    auto table = io::parseReferences("# comment\nm20 reach:min:goal 2/6\n\ntrap reach:max:goal 0.5\nloop reward:max inf\n");
    ASSERT_EQ(table.size(), 3u);
    EXPECT_EQ((table.at({"m20", "reach:min:goal"})), io::ReferenceValue(q("1/3")));
    EXPECT_EQ((table.at({"trap", "reach:max:goal"})), io::ReferenceValue(q("1/2")));
    EXPECT_FALSE((table.at({"loop", "reward:max"})));
    EXPECT_EQ(io::writeReferences(table), "loop reward:max inf\nm20 reach:min:goal 1/3\ntrap reach:max:goal 1/2\n");
    EXPECT_EQ(io::parseReferences(io::writeReferences(table)), table);
}

TEST(References, Errors) {
    try {
        io::parseReferences("a b 1\na b 2\n");
        ADD_FAILURE();
    } catch (ParseError const& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_MDP_ERROR(io::parseReferences("a b\n"), ErrorCode::ParseError);
    EXPECT_MDP_ERROR(io::parseReferences("a b c d\n"), ErrorCode::ParseError);
    EXPECT_MDP_ERROR(io::parseReferences("a b 1/0\n"), ErrorCode::ParseError);
}
