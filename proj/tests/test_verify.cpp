#include "support.hpp"

using namespace oporder;

namespace {

class Suite : public ::testing::TestWithParam<std::string> {};

TEST_P(Suite, PassesOnSeedRange) {
    VerifyOptions o;
    o.seed_begin = 0;
    o.seed_end = 49;
    const std::vector<SuiteResult> results = run_suites(GetParam(), o);
    ASSERT_EQ(results.size(), 1u);
    const SuiteResult& r = results.front();
    EXPECT_GT(r.cases, 0u);
    EXPECT_EQ(r.failures, 0u);
    for (const std::string& m : r.messages) ADD_FAILURE() << m;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const SuiteEntry& e : all_suites()) out.emplace_back(e.name);
    return out;
}

INSTANTIATE_TEST_SUITE_P(All, Suite, ::testing::ValuesIn(suite_names()),
                         [](const ::testing::TestParamInfo<std::string>& info) { return info.param; });

TEST(RunSuites, UnknownSuiteAndEmptyRange) {
    EXPECT_THROW(run_suites("nope", {}), Error);
    VerifyOptions o;
    o.seed_begin = 5;
    o.seed_end = 4;
    EXPECT_THROW(run_suites("linalg", o), InvalidTolerance);
}

}  // namespace
