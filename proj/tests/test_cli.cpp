#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "topaction/cli.hpp"

using namespace topaction;

namespace {

const std::string kData = TOPACTION_TEST_DATA;

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST(Cli, CoverReportMatchesGolden) {
    Outcome r = invoke({"cover", kData + "/x_arrow.psh", "--method", "arrow"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_EQ(r.out, read_file(kData + "/cover_x_arrow.golden"));
}

TEST(Cli, GenericCoverAgreesWithClosedForm) {
    Outcome r = invoke({"cover", kData + "/x_arrow.psh"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_NE(r.out.find("method=generic"), std::string::npos);
    EXPECT_NE(r.out.find("closed_form_match=yes"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("bound="), std::string::npos);
}

TEST(Cli, ReportsAreDeterministic) {
    const std::vector<std::vector<std::string>> commands{
        {"cover", kData + "/x_arrow.psh"},
        {"actions", kData + "/x_arrow.psh", kData + "/pool_arrow/g1.psh"},
        {"verify", kData + "/x_terminal.psh", "--pool", kData + "/pool_terminal"},
        {"sheaf-demo", "--max-index", "3", "--grid", "4"},
        {"pare-demo", "--k", "4"},
        {"emit-grid", "2"},
    };
    for (const auto& args : commands) {
        Outcome first = invoke(args);
        Outcome second = invoke(args);
        EXPECT_EQ(first.status, kExitOk) << args.front() << ": " << first.err;
        EXPECT_EQ(first.out, second.out) << args.front();
    }
}

TEST(Cli, SheafDemoReportsEscapeIndex) {
    Outcome r = invoke({"sheaf-demo", "--max-index", "3", "--grid", "5"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_NE(r.out.find("escape_index=3\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("is_sheaf_T=yes\n"), std::string::npos) << r.out;
}

TEST(Cli, PareDemoReportsMinimum) {
    Outcome r = invoke({"pare-demo", "--k", "3"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_NE(r.out.find("min_separator_size=4\n"), std::string::npos) << r.out;
}

TEST(Cli, VerifyPoolPasses) {
    for (const auto& [x, pool] : {std::pair{"/x_terminal.psh", "/pool_terminal"}, std::pair{"/x_arrow.psh", "/pool_arrow"}}) {
        Outcome r = invoke({"verify", kData + x, "--pool", kData + pool});
        EXPECT_EQ(r.status, kExitOk) << r.err;
        EXPECT_NE(r.out.find("result=ok"), std::string::npos) << r.out;
        EXPECT_NE(r.out.find("roundtrip=ok"), std::string::npos) << r.out;
    }
}

TEST(Cli, TerminalActionCounts) {
    // |Act(X,G)| = |G|^(|X|−1) with |X| = 3
    for (std::size_t g = 1; g <= 4; ++g) {
        Outcome r = invoke({"actions", kData + "/x_terminal.psh", kData + "/pool_terminal/s" + std::to_string(g) + ".psh"});
        ASSERT_EQ(r.status, kExitOk) << r.err;
        EXPECT_NE(r.out.find("act_count=" + std::to_string(g * g) + "\n"), std::string::npos) << r.out;
    }
}

TEST(Cli, WeakIsoModeFailsVerification) {
    Outcome r = invoke({"verify", kData + "/x_arrow.psh", "--pool", kData + "/pool_arrow", "--iso-mode", "uw"});
    EXPECT_EQ(r.status, kExitVerificationFailure) << r.out;
    EXPECT_NE(r.err.find("counterexample"), std::string::npos);
}

TEST(Cli, InputErrorsExitWithTwo) {
    EXPECT_EQ(invoke({"cover", kData + "/missing.psh"}).status, kExitInputError);
    EXPECT_EQ(invoke({"cover", kData + "/square.cat"}).status, kExitInputError);
    EXPECT_EQ(invoke({"frobnicate"}).status, kExitInputError);
    EXPECT_EQ(invoke({"cover", kData + "/x_arrow.psh", "--method", "boolean"}).status, kExitInputError);
    EXPECT_EQ(invoke({"pare-demo", "--k", "1"}).status, kExitInputError);
    Outcome r = invoke({"sheaf-demo", "--max-index", "4", "--grid", "3"});
    EXPECT_EQ(r.status, kExitInputError);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, BoundBelowTheInputIsRejected) {
    Outcome r = invoke({"cover", kData + "/x_arrow_kernel.psh", "--bound", "2"});
    EXPECT_EQ(r.status, kExitInputError) << r.out;
    EXPECT_EQ(invoke({"cover", kData + "/x_arrow_kernel.psh", "--bound", "3"}).status, kExitOk);
}
