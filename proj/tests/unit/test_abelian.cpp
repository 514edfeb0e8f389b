#include <gtest/gtest.h>

#include "fdual/abelian.hpp"

using namespace fdual;

TEST(Abelian, ParseAndBasicArithmetic) {
    GroupSpec G = parse_group("2,4,4");
    EXPECT_EQ(G.order(), 32u);
    EXPECT_EQ(G.exponent(), 4);
    EXPECT_EQ(G.index({1, 2, 3}), 1u * 16 + 2 * 4 + 3);
    EXPECT_EQ(G.coords(G.index({1, 2, 3})), (std::vector<int>{1, 2, 3}));
    Elem a = G.index({1, 3, 2}), b = G.index({1, 2, 3});
    EXPECT_EQ(G.add(a, b), G.index({0, 1, 1}));
    EXPECT_EQ(G.sub(a, b), G.index({0, 1, 3}));
    EXPECT_EQ(G.element_order(G.index({1, 0, 2})), 2);
    EXPECT_TRUE(parse_group("").trivial());
    EXPECT_TRUE(parse_group("1").trivial());
    EXPECT_THROW(GroupSpec({1, 4}), GroupError);
}

TEST(Abelian, InnerProductUsesExponentScaling) {
    GroupSpec G({2, 4});
    // (n / n_i) x_i y_i summed mod n = 4
    EXPECT_EQ(G.inner(G.index({1, 0}), G.index({1, 0})), 2);
    EXPECT_EQ(G.inner(G.index({1, 1}), G.index({1, 3})), (2 + 3) % 4);
}

TEST(Abelian, SubgroupCounts) {
    EXPECT_EQ(enumerate_subgroups(GroupSpec({4})).size(), 3u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({2, 4})).size(), 8u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({2, 2, 2})).size(), 16u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({4, 4})).size(), 15u);
    EXPECT_EQ(enumerate_subgroups(GroupSpec({5, 5})).size(), 8u);  // p + 3
    EXPECT_EQ(enumerate_subgroups(GroupSpec({12})).size(), 6u);
}

TEST(Abelian, AnnihilatorIsComplementary) {
    for (auto f : {std::vector<int>{2, 4}, std::vector<int>{4, 4}, std::vector<int>{2, 2, 3}}) {
        GroupSpec G(f);
        for (auto& H : enumerate_subgroups(G)) {
            Subgroup A = annihilator(G, H);
            EXPECT_EQ(H.size() * A.size(), G.order());
            for (Elem h : H.elements)
                for (Elem a : A.elements) EXPECT_EQ(G.inner(h, a), 0);
            EXPECT_EQ(annihilator(G, A), H);
        }
    }
}

TEST(Abelian, AutomorphismCountFormulaMatchesEnumeration) {
    EXPECT_EQ(automorphism_count(GroupSpec({4})), 2);
    EXPECT_EQ(automorphism_count(GroupSpec({2, 2})), 6);
    EXPECT_EQ(automorphism_count(GroupSpec({2, 4})), 8);
    EXPECT_EQ(automorphism_count(GroupSpec({4, 4})), 96);
    EXPECT_EQ(automorphism_count(GroupSpec({2, 2, 2})), 168);
    EXPECT_EQ(automorphism_count(GroupSpec({3, 3})), 48);
    for (auto f : {std::vector<int>{2, 4, 4}, std::vector<int>{4, 3, 3}, std::vector<int>{2, 8}, std::vector<int>{2, 2, 4}}) {
        GroupSpec G(f);
        EXPECT_EQ(static_cast<long double>(enumerate_automorphisms(G, 100000).size()), automorphism_count(G)) << G.name();
    }
}

TEST(Abelian, AdjointSatisfiesPairingIdentity) {
    GroupSpec G({2, 4, 4});
    auto auts = enumerate_automorphisms(G, 100000);
    for (std::size_t i = 0; i < auts.size(); i += 37) {
        const Automorphism& phi = auts[i];
        Automorphism adj = adjoint_of(G, phi);
        for (Elem x = 0; x < G.order(); x += 3)
            for (Elem y = 0; y < G.order(); y += 5) EXPECT_EQ(G.inner(phi(x), y), G.inner(x, adj(y)));
        Automorphism inv = inverse(G, phi);
        for (Elem x = 0; x < G.order(); ++x) EXPECT_EQ(inv(phi(x)), x);
    }
}

TEST(Abelian, OrbitsAreUnitMultiples) {
    GroupSpec G({12});
    int count = 0;
    auto ids = orbit_ids(G, &count);
    EXPECT_EQ(count, 6);  // one per divisor
    EXPECT_EQ(ids[1], ids[5]);
    EXPECT_EQ(ids[1], ids[11]);
    EXPECT_NE(ids[1], ids[2]);
    EXPECT_EQ(orbit_of(G, 2), (ElementSet{2, 10}));
}

TEST(Abelian, GroupsOfOrder) {
    EXPECT_EQ(abelian_groups_of_order(32).size(), 7u);
    EXPECT_EQ(abelian_groups_of_order(64).size(), 11u);
    EXPECT_EQ(abelian_groups_of_order(36).size(), 4u);
    auto g24 = abelian_groups_of_order(24);
    ASSERT_EQ(g24.size(), 3u);
    EXPECT_EQ(g24[0].factors(), (std::vector<int>{8, 3}));
    EXPECT_EQ(g24[2].factors(), (std::vector<int>{2, 2, 2, 3}));
}
