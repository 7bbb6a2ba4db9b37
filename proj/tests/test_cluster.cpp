#include <doctest.h>

#include "cpic/cluster.hpp"
#include "cpic/errors.hpp"

using namespace cpic;

namespace {
const char* const kSection5 = "((r r r r)4/9 (r r r r)4/9 (r r r r)4/9 (r r r r)1/2)1/3";

ClusterId cluster_of(const ClusterPicture& pic, std::vector<std::size_t> leaves) {
    auto c = pic.find(leaves);
    REQUIRE(c.has_value());
    return *c;
}
}  // namespace

TEST_SUITE("cluster") {

TEST_CASE("parse the sixteen root picture") {
    auto pic = parse_picture(kSection5);
    CHECK(pic.leaf_count() == 16);
    CHECK(pic.proper_clusters().size() == 5);
    CHECK(pic.depth(pic.top()) == Rational(1, 3));
    CHECK(format_picture(pic) == kSection5);
}

TEST_CASE("minimal and malformed pictures") {
    auto pic = parse_picture("(r r r)1/2");
    CHECK(pic.proper_clusters().size() == 1);
    CHECK_THROWS_AS(parse_picture("((r r)1/4 r)1/2"), InputError);
    CHECK_THROWS_AS(parse_picture("(r r)"), ParseError);
    CHECK_THROWS_AS(parse_picture("(r r)1/2 junk"), ParseError);
    CHECK_THROWS_AS(parse_picture("(r)1"), InputError);
    try {
        parse_picture("((r r)1/2 r");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 11);
    }
}

TEST_CASE("json form round trips") {
    auto pic = parse_picture(kSection5);
    auto j = picture_to_json(pic);
    CHECK(j["leaves"] == 16);
    auto back = picture_from_json(j);
    CHECK(format_picture(back) == kSection5);
    CHECK(isomorphic(pic, back).has_value());
}

TEST_CASE("wedge, mu, relative depth") {
    auto pic = parse_picture(kSection5);
    ClusterId s1 = cluster_of(pic, {0, 1, 2, 3});
    ClusterId s4 = cluster_of(pic, {12, 13, 14, 15});
    CHECK(pic.wedge(0, 4) == pic.top());
    CHECK(pic.wedge(0, 3) == s1);
    CHECK(pic.wedge(s1, s1) == s1);
    CHECK(mu(pic, s1) == Rational(4));
    CHECK(mu(pic, s4) == Rational(4));
    CHECK(mu(pic, pic.top()) == Rational(0));
    CHECK(relative_depth(pic, s4) == Rational(1, 6));
    CHECK(relative_depth(pic, pic.top()) == Rational(1, 3));
}

TEST_CASE("odd children and ubereven") {
    auto pic = parse_picture(kSection5);
    ClusterId s1 = cluster_of(pic, {0, 1, 2, 3});
    CHECK(odd_children(pic, s1).size() == 4);
    CHECK_FALSE(is_ubereven(pic, s1));
    CHECK(is_ubereven(pic, pic.top()));
    auto twin = parse_picture("((r r)1 r)0");
    ClusterId t = cluster_of(twin, {0, 1});
    CHECK(odd_children(twin, t).size() == 2);
    CHECK_FALSE(is_odd(twin, t));
    CHECK_FALSE(is_ubereven(twin, t));
}

TEST_CASE("isomorphism respects depths and relabelling") {
    auto a = parse_picture("((r r)1/2 r)0");
    auto b = parse_picture("(r (r r)1/2)0");
    CHECK(isomorphic(a, b).has_value());
    CHECK_FALSE(isomorphic(parse_picture("(r r)1/2"), parse_picture("(r r)1/3")).has_value());
    auto pic = parse_picture(kSection5);
    auto perm = parse_picture("((r r)1/2 (r r r r)4/9 (r r r r)4/9 (r r)1/2 (r r r r)4/9)1/3");
    CHECK_FALSE(isomorphic(pic, perm).has_value());
    auto shuffled = parse_picture("((r r r r)1/2 (r r r r)4/9 (r r r r)4/9 (r r r r)4/9)1/3");
    CHECK(isomorphic(pic, shuffled).has_value());
}

TEST_CASE("canonical form ignores child order") {
    auto a = parse_picture("((r r)1/2 r (r r r)2/3)0");
    auto b = parse_picture("((r r r)2/3 (r r)1/2 r)0");
    CHECK(canonical_form(a, a.top()) == canonical_form(b, b.top()));
    CHECK(canonical_form(a, a.top(), false) == canonical_form(parse_picture("((r r)5 r (r r r)7)0"),
                                                               parse_picture("((r r)5 r (r r r)7)0").top(), false));
}

}
