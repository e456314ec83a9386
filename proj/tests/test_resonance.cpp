#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlsb/normal_form.hpp"

#include <set>

using namespace nlsb;

TEST_CASE("momentum and divisor helpers") {
    CHECK(momentum({1, 2}, {3, -2}) == 2);
    CHECK(divisor({1, 2}, {3, -2}) == 1 + 4 - 9 - 4);
}

TEST_CASE("enumeration is canonical, deterministic, and exactly resonant") {
    auto list = enumerate_resonant(1, 12);
    CHECK(!list.empty());
    std::set<ResonantQuadruple> seen;
    for (const ResonantQuadruple& q : list) {
        CHECK(q.j1 <= q.j2);
        CHECK(q.l1 <= q.l2);
        CHECK(std::abs(q.momentum) == 2);
        CHECK(static_cast<long>(q.j1) + q.j2 - q.l1 - q.l2 == q.momentum);
        CHECK(static_cast<long>(q.j1) * q.j1 + static_cast<long>(q.j2) * q.j2 ==
              static_cast<long>(q.l1) * q.l1 + static_cast<long>(q.l2) * q.l2);
        CHECK(std::max({std::abs(q.j1), std::abs(q.j2), std::abs(q.l1), std::abs(q.l2)}) <= 12);
        CHECK(seen.insert(q).second);  // no duplicates
    }
    CHECK(enumerate_resonant(1, 12) == list);
}

TEST_CASE("known families are present") {
    auto list = enumerate_resonant(1, 12);
    std::set<ResonantQuadruple> s(list.begin(), list.end());
    for (int q = -12; q <= 12; ++q) {
        ResonantQuadruple expect{std::min(1, q), std::max(1, q), std::min(-1, q),
                                 std::max(-1, q), 2};
        CHECK(s.count(expect) == 1);
    }
    CHECK(s.count({-1, 1, -1, -1, 2}) == 1);
    CHECK(s.count({-1, 2, -2, 1, 2}) == 1);
    CHECK(s.count({-8, -1, -7, -4, 2}) == 1);
    CHECK(s.count({-7, -1, -5, -5, 2}) == 1);
    // mirrors under index negation
    CHECK(s.count({-1, 1, 1, 1, -2}) == 1);
    CHECK(s.count({-2, 1, -1, 2, -2}) == 1);
}

TEST_CASE("brute force cross-check at moderate bound") {
    const int nb = 30;
    std::set<ResonantQuadruple> brute;
    for (int j1 = -nb; j1 <= nb; ++j1)
        for (int j2 = j1; j2 <= nb; ++j2)
            for (int l1 = -nb; l1 <= nb; ++l1)
                for (long m : {+2L, -2L}) {
                    long l2 = static_cast<long>(j1) + j2 - l1 - m;
                    if (l2 < l1 || l2 > nb) continue;
                    if (static_cast<long>(j1) * j1 + static_cast<long>(j2) * j2 !=
                        static_cast<long>(l1) * l1 + l2 * l2)
                        continue;
                    brute.insert({j1, j2, l1, static_cast<int>(l2), m});
                }
    auto list = enumerate_resonant(1, nb);
    CHECK(brute == std::set<ResonantQuadruple>(list.begin(), list.end()));
}

TEST_CASE("general p mirrors the p = 1 families") {
    auto list = enumerate_resonant(2, 10);
    std::set<ResonantQuadruple> s(list.begin(), list.end());
    for (const ResonantQuadruple& q : list) CHECK(std::abs(q.momentum) == 4);
    // the pair-coupling family (2, q, -2, q) at momentum 4
    for (int q = -10; q <= 10; ++q)
        CHECK(s.count({std::min(2, q), std::max(2, q), std::min(-2, q), std::max(-2, q), 4}) ==
              1);
    // the p = 2 analogue of (-1,2,-2,1) by doubling: (-2,4,-4,2)
    CHECK(s.count({-2, 4, -4, 2, 4}) == 1);
}
