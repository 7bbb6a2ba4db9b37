#include <doctest.h>

#include <algorithm>

#include "cpic/cluster.hpp"
#include "cpic/errors.hpp"
#include "cpic/inertia.hpp"
#include "cpic/witness.hpp"

using namespace cpic;

namespace {
const char* const kSection5 = "((r r r r)4/9 (r r r r)4/9 (r r r r)4/9 (r r r r)1/2)1/3";

Witness build(const ClusterPicture& pic, long p) {
    auto a = *find_action(pic, Int(p)).action;
    return construct_witness(pic, a, p);
}
}  // namespace

TEST_SUITE("witness") {

TEST_CASE("cyclotomic ring arithmetic") {
    CyclotomicRing r18(18);
    CHECK(r18.degree() == 6);
    CHECK(r18.zeta(9) == r18.constant(-1));
    CHECK(r18.zeta(81) == r18.constant(-1));
    CyclotomicRing r3(3);
    // 1 + zeta + zeta^2 = 0
    CHECK(r3.is_zero(r3.add(r3.add(r3.constant(1), r3.zeta(1)), r3.zeta(2))));
    CHECK(r3.as_integer(r3.mul(r3.zeta(1), r3.zeta(2))) == Int(1));
    CHECK_FALSE(r3.as_integer(r3.zeta(1)).has_value());
    CHECK(r3.galois(r3.zeta(1), 2) == r3.zeta(2));
}

TEST_CASE("residue field has an element of exact order e") {
    ResidueField f(19, 18);
    CHECK(f.degree() == 1);
    ResidueField g(5, 3);
    CHECK(g.degree() == 2);
    CHECK(g.is_unit(CyclotomicRing(3).constant(1)));
    CHECK_FALSE(g.is_unit(CyclotomicRing(3).constant(5)));
}

TEST_CASE("representatives of the sixteen root picture") {
    auto pic = parse_picture(kSection5);
    auto a = *find_action(pic).action;
    CHECK(choose_representatives(pic, a) == std::vector<std::size_t>{0, 3, 12, 14});
}

TEST_CASE("coefficients at p = 19") {
    auto pic = parse_picture(kSection5);
    auto a = *find_action(pic, Int(19)).action;
    auto reps = choose_representatives(pic, a);
    auto table = assign_coefficients(pic, a, reps, ResidueField(19, 18));
    ClusterId s1 = *pic.find({0, 1, 2, 3});
    ClusterId s4 = *pic.find({12, 13, 14, 15});
    CHECK(table.at(pic, 0, s1) == 1);
    CHECK(table.at(pic, 0, pic.top()) == 1);
    CHECK(table.at(pic, 3, pic.top()) == 1);
    CHECK(table.at(pic, 3, s1) == 0);
    CHECK(table.at(pic, 12, s4) == 1);
    CHECK(table.at(pic, 12, pic.top()) == 0);
    CHECK(table.at(pic, 14, s4) == 2);
    CHECK(table.at(pic, 14, pic.top()) == 0);
}

TEST_CASE("roots and valuations of differences") {
    auto pic = parse_picture(kSection5);
    auto a = *find_action(pic, Int(19)).action;
    CyclotomicRing ring(18);
    ResidueField field(19, 18);
    auto table = assign_coefficients(pic, a, choose_representatives(pic, a), field);
    auto roots = build_roots(pic, a, table, ring);
    REQUIRE(roots[0].terms.size() == 2);
    CHECK(roots[0].terms.count(8) == 1);
    CHECK(roots[0].terms.count(6) == 1);
    CHECK(valuation_of_difference(roots[0], roots[3], ring, field) == Rational(4, 9));
    CHECK(valuation_of_difference(roots[12], roots[14], ring, field) == Rational(1, 2));
    CHECK(valuation_of_difference(roots[0], roots[4], ring, field) == Rational(1, 3));
    CHECK_THROWS_AS(valuation_of_difference(roots[0], roots[0], ring, field), InputError);

    PiAdicElement u9;
    u9.terms[9] = ring.constant(1);
    auto c = conjugate(ring, u9, 9);
    REQUIRE(c.terms.count(9) == 1);
    CHECK(c.terms.at(9) == ring.constant(-1));
}

TEST_CASE("sixteen root witness") {
    auto pic = parse_picture(kSection5);
    auto w = build(pic, 19);
    CHECK(w.polynomial.size() == 17);
    std::vector<std::string> factors;
    for (const auto& f : w.factors) factors.push_back(format_poly(f));
    auto has = [&](const std::string& s) { return std::find(factors.begin(), factors.end(), s) != factors.end(); };
    CHECK(has("x^2 - 19"));
    CHECK(has("x^2 - 76"));
    CHECK(has("x^3 - 19"));
    CHECK(has("x^9 - 57x^6 - 6498x^4 + 1083x^3 - 61731x^2 - 61731x - 137180"));
    CHECK(round_trip(pic, w));
}

TEST_CASE("small witnesses") {
    auto w = build(parse_picture("(r r)1/2"), 5);
    CHECK(format_poly(w.polynomial) == "x^2 - 5");
    CHECK(format_picture(recover_picture(w)) == "(r r)1/2");
    CHECK_FALSE(round_trip(parse_picture("(r r)1/3"), w));
    for (const char* t : {"(r r r)-7/3", "((r r)3 r)0", "(r r (r r r)2/3)1/2",
                          "(((r r r)4/3 (r r r)4/3)3/4 ((r r r)4/3 (r r r)4/3)3/4)1/2",
                          "((r r)1/2 (r r)1/2 r)-1/2"}) {
        auto pic = parse_picture(t);
        bool built = false;
        for (long p : {5L, 7L, 13L, 37L, 61L}) {
            try {
                auto ww = build(pic, p);
                CHECK_MESSAGE(round_trip(pic, ww), t);
                built = true;
                break;
            } catch (const InputError&) {
            }
        }
        CHECK_MESSAGE(built, t);
    }
}

TEST_CASE("negative depths are shifted back") {
    auto pic = parse_picture("(r r r)-7/3");
    auto [shifted, m] = shift_depths(pic);
    CHECK(m == 3);
    CHECK(shifted.depth(shifted.top()) == Rational(2, 3));
}

TEST_CASE("orbit length six without a difference of denominator six") {
    CyclotomicRing ring(6);
    ResidueField field(7, 6);
    PiAdicElement r;
    r.terms[3] = ring.constant(1);
    r.terms[4] = ring.constant(1);
    auto [len, dens] = conjugate_difference_denominators(r, ring, field);
    CHECK(len == 6);
    CHECK(dens.size() == 5);
    CHECK(std::find(dens.begin(), dens.end(), Int(6)) == dens.end());
}

TEST_CASE("too small a prime is reported") {
    auto pic = parse_picture("(r r r r r r r)0");
    auto a = *find_action(pic).action;
    CHECK_THROWS_AS(construct_witness(pic, a, 5), InputError);
}

}
