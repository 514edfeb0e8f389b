#include <gtest/gtest.h>

#include <algorithm>

#include "fdual/nonexistence.hpp"

using namespace fdual;

namespace {

std::vector<std::string> tags(const GroupSpec& G, long long s, long long t) {
    std::vector<std::string> out;
    for (auto& v : all_filters(PairParams{G, s, t})) out.push_back(v.rule);
    return out;
}

bool has(const std::vector<std::string>& v, const char* tag) { return std::find(v.begin(), v.end(), tag) != v.end(); }

}  // namespace

TEST(Filters, DerivedConstants) {
    PairParams P{GroupSpec({180}), 6, 30};
    EXPECT_EQ(P.a_S(), 6);
    EXPECT_EQ(P.b_S(), 1);
    EXPECT_EQ(P.a_T(), 150);
    EXPECT_EQ(P.b_T(), 5);
}

TEST(Filters, Z180WorkedExample) {
    auto v = all_filters(PairParams{GroupSpec({180}), 6, 30});
    auto it = std::find_if(v.begin(), v.end(), [](auto& f) { return f.rule == rule::char_div; });
    ASSERT_NE(it, v.end());
    EXPECT_NE(it->reason.find("|chi|^2=6"), std::string::npos) << it->reason;
}

TEST(Filters, KnownExistingCasesSurvive) {
    EXPECT_TRUE(tags(GroupSpec(), 1, 1).empty());
    EXPECT_TRUE(tags(GroupSpec({4}), 2, 2).empty());
    EXPECT_TRUE(tags(GroupSpec({3, 3}), 3, 3).empty());
    EXPECT_TRUE(tags(GroupSpec({4, 4}), 4, 4).empty());
    EXPECT_TRUE(tags(GroupSpec({2, 4, 4}), 4, 8).empty());
    EXPECT_TRUE(tags(GroupSpec({2, 4, 4}), 8, 4).empty());
    EXPECT_TRUE(tags(GroupSpec({4, 3, 3}), 6, 6).empty());
}

TEST(Filters, TableRuleExamples) {
    EXPECT_TRUE(has(tags(GroupSpec({2, 2}), 2, 2), rule::size_two));
    EXPECT_TRUE(has(tags(GroupSpec({9}), 3, 3), rule::prime_size));
    EXPECT_TRUE(has(tags(GroupSpec({16}), 4, 4), rule::cyclic_prime_power));
    EXPECT_TRUE(has(tags(GroupSpec({2, 2, 2, 2}), 4, 4), rule::generators));
    EXPECT_TRUE(has(tags(GroupSpec({2, 2, 2, 4}), 4, 8), rule::generators));
    EXPECT_TRUE(has(tags(GroupSpec({12}), 3, 4), rule::common_factor));
    EXPECT_TRUE(has(tags(GroupSpec({2, 27}), 3, 18), rule::exponent_bound));
    EXPECT_TRUE(has(tags(GroupSpec({4, 9}), 6, 6), rule::cyclic_p2q2));
    EXPECT_TRUE(has(tags(GroupSpec({8, 5}), 4, 10), rule::self_conjugate));
    EXPECT_TRUE(has(tags(GroupSpec({2, 9}), 3, 6), rule::prime_size));
    auto z2z3 = tags(GroupSpec({2, 3, 3}), 3, 6);
    EXPECT_TRUE(has(z2z3, rule::self_conjugate));
    auto w = tags(GroupSpec({2, 4, 5}), 4, 10);
    EXPECT_TRUE(has(w, rule::weight));
    EXPECT_TRUE(has(tags(GroupSpec({60}), 6, 10), rule::weight));
    EXPECT_TRUE(has(tags(GroupSpec({3, 8}), 4, 6), rule::self_conjugate));
    EXPECT_TRUE(has(tags(GroupSpec({4}), 2, 3), rule::size_product));
}

TEST(Filters, SelfConjugacy) {
    EXPECT_TRUE(self_conjugate(2, 40));   // 2 is -1 mod... p-free part 5: 2^2 = 4 = -1
    EXPECT_TRUE(self_conjugate(2, 18));   // 2^3 = 8 = -1 mod 9
    EXPECT_FALSE(self_conjugate(2, 7));   // powers of 2 mod 7 are 1, 2, 4
    EXPECT_TRUE(self_conjugate(3, 9));
}

TEST(CyclicScan, ThreeOpenCasesUpTo1000) {
    auto s = scan_cyclic(1000, 4);
    std::vector<CyclicCase> want{{600, 10, 60, {}}, {784, 28, 28, {}}, {900, 30, 30, {}}};
    EXPECT_EQ(s, want);
    auto report = scan_cyclic_report(1000, 4);
    auto z4 = std::find_if(report.begin(), report.end(), [](auto& c) { return c.n == 4 && c.ssize == 2; });
    ASSERT_NE(z4, report.end());
    EXPECT_TRUE(z4->known);
    EXPECT_TRUE(z4->kills.empty());
}

TEST(CyclicScan, MonotoneAndThreadIndependent) {
    auto small = scan_cyclic(400, 1);
    auto big = scan_cyclic(1000, 8);
    std::vector<CyclicCase> restricted;
    for (auto& c : big)
        if (c.n <= 400) restricted.push_back(c);
    EXPECT_EQ(small, restricted);
    auto a = scan_cyclic_report(300, 1), b = scan_cyclic_report(300, 6);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i], b[i]);
        EXPECT_EQ(a[i].kills.size(), b[i].kills.size());
    }
}
