#include <doctest.h>

#include "cpic/cluster.hpp"
#include "cpic/elliptic.hpp"
#include "cpic/errors.hpp"

using namespace cpic;

namespace {
long val(const Int& p, Int x) {
    if (x == 0) return 1000;
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Tate's algorithm for p >= 5 on y^2 = x(x - A)(x - B), multiplicative types only.
std::string tate_multiplicative(const Int& p, const Int& A, const Int& B) {
    Int a2 = -(A + B), a4 = A * B;
    Int c4 = 16 * (a2 * a2 - 3 * a4);
    Int c6 = -64 * a2 * a2 * a2 + 288 * a2 * a4;
    Int disc = 16 * A * A * B * B * (A - B) * (A - B);
    long v4 = val(p, c4), v6 = val(p, c6), vd = val(p, disc);
    if (v4 == 0 && vd > 0) return "I" + std::to_string(vd);
    if (v4 == 2 && v6 == 3 && vd > 6) return "I" + std::to_string(vd - 6) + "*";
    return "?";
}
}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("potential reduction") {
    CHECK(potential_reduction(parse_picture("(r r r)1/2")) == Reduction::potentially_good);
    CHECK(potential_reduction(parse_picture("((r r)1 r)0")) == Reduction::potentially_multiplicative);
    CHECK(potential_reduction(parse_picture("(r r r)0")) == Reduction::potentially_good);
    CHECK_THROWS_AS(potential_reduction(parse_picture("(r r r r)0")), InputError);
}

TEST_CASE("potentially good rows") {
    struct Row {
        const char* depth;
        const char* type;
        long order;
        long mult;
    };
    Row rows[] = {{"0", "I0", 1, 2},  {"1/3", "II", 6, 1},  {"1/2", "III", 4, 1},  {"2/3", "IV", 3, 1},
                  {"1", "I0*", 2, 2}, {"4/3", "IV*", 3, 1}, {"3/2", "III*", 4, 1}, {"5/3", "II*", 6, 1}};
    for (const auto& r : rows) {
        for (long shift : {-4L, 0L, 2L}) {
            Rational d = Rational::parse(r.depth) + Rational(shift);
            auto c = classify_elliptic(parse_picture("(r r r)" + d.str()), 7);
            CHECK(c.kodaira.str() == r.type);
            CHECK(c.rep.h1_ab.multiplicity(r.order) == Rational(r.mult));
            CHECK(c.normalized_top_depth == Rational::parse(r.depth));
        }
    }
    CHECK(classify_elliptic(parse_picture("(r r r)1/3"), 7).root.sign == legendre(-1, 7));
}

TEST_CASE("potentially good needs p at least 5") {
    CHECK_THROWS_AS(classify_elliptic(parse_picture("(r r r)1/2"), 3), InputError);
}

TEST_CASE("multiplicative index against Tate's algorithm") {
    const Int p = 5;
    for (long k = 1; k <= 6; ++k) {
        auto c0 = classify_elliptic(parse_picture("((r r)" + std::to_string(k) + " r)0"), p);
        CHECK(c0.multiplicative);
        CHECK(c0.kodaira.str() == tate_multiplicative(p, power(p, k), 1));
        CHECK(c0.root.ambiguous);
        auto c1 = classify_elliptic(parse_picture("((r r)" + std::to_string(k + 1) + " r)1"), p);
        CHECK_FALSE(c1.multiplicative);
        CHECK(c1.kodaira.str() == tate_multiplicative(p, power(p, k + 1), p));
    }
    CHECK(classify_elliptic(parse_picture("((r r)3 r)0"), 7).kodaira.str() == "I6");
}

TEST_CASE("multiplicative exactly when the top depth is even") {
    for (long dr = -3; dr <= 4; ++dr)
        for (long extra = 1; extra <= 3; ++extra) {
            std::string text = "((r r)" + std::to_string(dr + extra) + " r)" + std::to_string(dr);
            auto c = classify_elliptic(parse_picture(text), 5);
            CHECK(c.reduction == Reduction::potentially_multiplicative);
            CHECK(c.multiplicative == (dr % 2 == 0));
        }
}

TEST_CASE("two-cluster pictures need an integral top depth") {
    CHECK_THROWS_AS(classify_elliptic(parse_picture("((r r)3/2 r)1/2"), 5), InputError);
}

}
