#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cpic/cluster.hpp"
#include "cpic/errors.hpp"
#include "cpic/inertia.hpp"

using namespace cpic;

namespace {
const char* const kSection5 = "((r r r r)4/9 (r r r r)4/9 (r r r r)4/9 (r r r r)1/2)1/3";
const char* const kC12 = "(((r r r)4/3 (r r r)4/3)3/4 ((r r r)4/3 (r r r)4/3)3/4)1/2";

std::vector<std::size_t> cycle_type(const Permutation& g) {
    std::vector<std::size_t> t;
    for (const auto& c : cycles(g))
        if (c.size() > 1) t.push_back(c.size());
    std::sort(t.begin(), t.end());
    return t;
}
}  // namespace

TEST_SUITE("inertia") {

TEST_CASE("required order") {
    CHECK(required_order(parse_picture(kSection5)) == 18);
    CHECK(required_order(parse_picture(kC12)) == 12);
    CHECK(required_order(parse_picture("((r r)3 r)0")) == 1);
}

TEST_CASE("action on the sixteen root picture") {
    auto pic = parse_picture(kSection5);
    auto found = find_action(pic);
    REQUIRE(found.action);
    const auto& a = *found.action;
    CHECK(a.order == 18);
    CHECK(perm_order(a.generator) == 18);
    CHECK(cycle_type(a.generator) == std::vector<std::size_t>{2, 2, 3, 9});
    CHECK(format_cycles(a.generator) == "(r1,r5,r9,r2,r6,r10,r3,r7,r11)(r4,r8,r12)(r13,r14)(r15,r16)");
    CHECK(a[0].stab_index == 9);
    CHECK(a[3].stab_index == 3);
    CHECK(a[12].stab_index == 2);
    auto orph = orphans(pic, a);
    REQUIRE(orph.size() == 4);
    std::vector<std::vector<std::size_t>> orphan_leaves;
    for (auto [parent, child] : orph) orphan_leaves.push_back(pic[child].leaves);
    std::sort(orphan_leaves.begin(), orphan_leaves.end());
    CHECK(orphan_leaves == std::vector<std::vector<std::size_t>>{{3}, {7}, {11}, {12, 13, 14, 15}});
}

TEST_CASE("check_action passes for the found action and fails for broken ones") {
    auto pic = parse_picture(kSection5);
    auto a = *find_action(pic).action;
    auto report = check_action(pic, a.generator);
    CHECK(report.all_passed);
    CHECK(report.order == 18);

    Permutation id(16);
    std::iota(id.begin(), id.end(), 0);
    auto bad = check_action(pic, id);
    CHECK_FALSE(bad.all_passed);
    CHECK(std::any_of(bad.checks.begin(), bad.checks.end(),
                      [](const ActionCheck& c) { return !c.passed && c.condition == "orbit-length"; }));

    Permutation swap = id;
    std::swap(swap[0], swap[15]);
    auto broken = check_action(pic, compose(swap, a.generator));
    CHECK_FALSE(broken.all_passed);
    CHECK(std::any_of(broken.checks.begin(), broken.checks.end(),
                      [](const ActionCheck& c) { return !c.passed && c.condition == "automorphism"; }));
}

TEST_CASE("single orbit and impossible pictures") {
    auto tri = parse_picture("(r r r)2/3");
    auto a = find_action(tri);
    REQUIRE(a.action);
    CHECK(cycle_type(a.action->generator) == std::vector<std::size_t>{3});
    CHECK(orphans(tri, *a.action).empty());

    auto bad = parse_picture("((r r r r)5/4 (r r)3/2)1/2");
    auto none = find_action(bad);
    CHECK_FALSE(none.action);
    CHECK_FALSE(none.failure.empty());
}

TEST_CASE("wild primes are rejected") {
    auto pic = parse_picture(kSection5);
    CHECK_THROWS_AS(find_action(pic, Int(3)), WildError);
    CHECK_THROWS_AS(find_action(pic, Int(2)), InputError);  // residue characteristic must be odd
    CHECK(find_action(pic, Int(19)).action);
}

TEST_CASE("denominator candidates") {
    CHECK(denominator_candidates(4, 3) == std::vector<Int>{3, 6, 12});
    CHECK(denominator_candidates(4, 2) == std::vector<Int>{8});
    CHECK(denominator_candidates(1, 1) == std::vector<Int>{1});
    // brute force b/gcd(b, n) = L over small b
    for (long n = 1; n <= 8; ++n)
        for (long L = 1; L <= 6; ++L) {
            std::vector<Int> want;
            for (long b = 1; b <= 200; ++b)
                if (b / std::gcd(b, n) == L) want.push_back(b);
            CHECK(denominator_candidates(n, L) == want);
        }
}

TEST_CASE("denominator recovery on the C12 picture") {
    auto pic = parse_picture(kC12);
    auto a = *find_action(pic).action;
    CHECK(a.order == 12);
    auto dc = enumerate_denominators(pic, a);
    REQUIRE(dc.representatives.size() == 3);
    std::vector<std::vector<Int>> by_size;
    for (std::size_t i = 0; i < 3; ++i) {
        std::size_t sz = pic.size(dc.representatives[i]);
        if (sz == 12) CHECK(dc.candidates[i] == std::vector<Int>{2});
        if (sz == 6) CHECK(dc.candidates[i] == std::vector<Int>{4});
        if (sz == 3) CHECK(dc.candidates[i] == std::vector<Int>{3, 6, 12});
    }
}

TEST_CASE("relative depths are not enough") {
    auto pic = parse_picture("(r r (r r r)2/3)1/2");
    auto a = *find_action(pic).action;
    CHECK(check_action(pic, a.generator).all_passed);
    CHECK_FALSE(check_action(pic, a.generator, DepthMode::relative).all_passed);
}

TEST_CASE("action enumeration on a shape") {
    auto shape = parse_picture("(r r r r r)1");
    auto acts = enumerate_actions(shape);
    std::vector<Int> orders;
    for (const auto& a : acts) orders.push_back(a.order);
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<Int>{1, 2, 4, 5});
}

}
