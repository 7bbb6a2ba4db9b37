#include <doctest.h>

#include <algorithm>

#include "cpic/errors.hpp"
#include "cpic/tables.hpp"

using namespace cpic;

TEST_SUITE("tables") {

TEST_CASE("series-reduced trees") {
    std::vector<std::size_t> counts;
    for (std::size_t n = 2; n <= 7; ++n) counts.push_back(enumerate_shapes(n).size());
    CHECK(counts == std::vector<std::size_t>{1, 2, 5, 12, 33, 90});
}

TEST_CASE("named shapes") {
    auto s = parse_named_shape("(((r r)s2 r)s1 r r)R");
    CHECK(s.str() == "(((r r)s2 r)s1 r r)R");
    CHECK(s.names == std::vector<std::string>{"R", "s1", "s2"});
    CHECK(s.index_of("s2") == 2);
    CHECK_THROWS_AS(s.index_of("s7"), InputError);
    CHECK_THROWS_AS(parse_named_shape("((r r)R r)R"), InputError);
    auto d = default_names(s.picture);
    CHECK(d.key() == s.key());
}

TEST_CASE("conditions") {
    auto s = parse_named_shape("((r r)s1 r r r)R");
    auto c = parse_condition("2|dR+ds1, 2!|3dR", s);
    CHECK(c.kind == Condition::Kind::atoms);
    CHECK(c.atoms.size() == 2);
    CHECK(format_condition(c, s) == "2|dR+ds1, 2!|3dR");
    CHECK(c.holds({Rational(1), Rational(1)}));
    CHECK_FALSE(c.holds({Rational(2), Rational(2)}));
    CHECK(c.holds({Rational(1, 2), Rational(3, 2)}));  // 2 | 2, and 3/2 is not divisible by 2
    CHECK_FALSE(c.holds({Rational(1, 2), Rational(1, 2)}));
    CHECK(parse_condition("2|0dR", s).holds({Rational(1), Rational(1)}));
    auto prod = parse_condition("2|dR*ds1", s);
    CHECK(prod.holds({Rational(2), Rational(1, 1)}));
    CHECK(parse_condition("-", s).kind == Condition::Kind::always);
    CHECK(parse_condition("else", s).kind == Condition::Kind::otherwise);
    CHECK_THROWS_AS(parse_condition("2|dX", s), InputError);
}

TEST_CASE("rho text") {
    auto r = parse_rho_text("2rho1 + rho4");
    CHECK(r.multiplicity(1) == Rational(2));
    CHECK(rho_text(r) == "2rho1 + rho4");
    CHECK(parse_rho_text("0").is_zero());
    CHECK(rho_text(RhoSum{}) == "0");
}

TEST_CASE("tuples of a five root shape") {
    auto s = parse_named_shape("((r r)s1 r r r)R");
    std::vector<std::string> tuples;
    for (const auto& ta : enumerate_tuples(s)) tuples.push_back(tuple_str(ta.tuple));
    CHECK(tuples == std::vector<std::string>{"(1,1)", "(1,2)", "(3,1)", "(3,2)"});
}

TEST_CASE("depth samples cover numerators modulo twice the denominator") {
    auto s = parse_named_shape("(r r r r r)R");
    for (const auto& ta : enumerate_tuples(s)) {
        auto samples = depth_samples(s, ta);
        Int b = ta.tuple[0];
        CHECK(Int(samples.size()) == 2 * euler_phi(b));
        for (const auto& d : samples) CHECK(denom(d[0]) == b);
    }
}

TEST_CASE("embedded golden tables") {
    auto golden = parse_golden(embedded_golden_text());
    std::size_t rows = 0, corrected = 0, five = 0, six = 0;
    for (const auto& g : golden) {
        (g.roots == 5 ? five : six) += 1;
        rows += g.rows.size();
        for (const auto& r : g.rows) corrected += r.printed.has_value();
    }
    CHECK(five == 12);
    CHECK(six == 33);
    CHECK(rows == 488);
    CHECK(corrected == 27);
}

TEST_CASE("five root classification matches the golden tables") {
    auto golden = parse_golden(embedded_golden_text());
    std::vector<GoldenShape> five;
    for (const auto& g : golden)
        if (g.roots == 5) five.push_back(g);
    auto c = classify_all(5, golden);
    CHECK(c.shapes.size() == 12);
    CHECK(c.tuple_count() == 55);
    auto diff = compare_golden(c, five);
    CHECK(diff.empty());
    CHECK(diff.matched_shapes.size() == 12);
    for (const auto& e : diff.entries) MESSAGE(e.kind << " " << e.shape << " " << e.tuple);
}

TEST_CASE("a wrong golden row shows up as a mismatch") {
    const char* text =
        "roots 5\n"
        "shape ((r r)s1 r r r)R\n"
        "(1,1); 2|dR; 2rho1; rho1\n"
        "(1,1); 2!|dR; 2rho2; rho2\n"
        "(1,2); 2|dR; 2rho1; rho1\n"
        "(1,2); 2!|dR; 2rho2; rho2\n"
        "(3,1); 2|3dR; rho3; rho1\n"
        "(3,1); 2!|3dR; rho6; rho1\n"
        "(3,2); 2|3dR; rho3; rho1\n";
    auto golden = parse_golden(text);
    auto c = classify_all(5, golden);
    Classification one;
    one.roots = 5;
    one.shapes.push_back(c.shapes.front());
    auto diff = compare_golden(one, golden);
    auto count = [&](const std::string& kind) {
        return std::count_if(diff.entries.begin(), diff.entries.end(),
                             [&](const DiffEntry& e) { return e.kind == kind; });
    };
    CHECK(count("mismatch") >= 1);
    CHECK(count("uncovered") >= 1);
    CHECK_FALSE(diff.empty());
    auto j = diff_to_json(diff);
    CHECK(j["match"] == false);
}

TEST_CASE("correction lines replace the printed row") {
    const char* text =
        "roots 5\n"
        "shape (r r r r r)R\n"
        "(1); 2|dR; 4rho2; 0\n"
        "= (1); 2|dR; 4rho1; 0  # swapped\n";
    auto golden = parse_golden(text);
    REQUIRE(golden.size() == 1);
    REQUIRE(golden[0].rows.size() == 1);
    CHECK(golden[0].rows[0].printed.has_value());
    CHECK(golden[0].rows[0].correction_reason == "swapped");
    CHECK(golden[0].rows[0].h1_ab == parse_rho_text("4rho1"));
}

}
