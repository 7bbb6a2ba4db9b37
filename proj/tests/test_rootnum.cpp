#include <doctest.h>

#include "cpic/cluster.hpp"
#include "cpic/errors.hpp"
#include "cpic/inertia.hpp"
#include "cpic/repn.hpp"
#include "cpic/rootnum.hpp"

using namespace cpic;

namespace {
std::vector<long> odd_primes_below(long n) {
    std::vector<long> out;
    for (long q = 3; q < n; ++q)
        if (is_prime(q)) out.push_back(q);
    return out;
}

InertiaRep ab_only(std::initializer_list<std::pair<long, long>> terms) {
    InertiaRep r;
    for (auto [d, m] : terms) r.h1_ab.add(d, m);
    return r;
}
}  // namespace

TEST_SUITE("rootnum") {

TEST_CASE("sign factors by character order") {
    for (long q : odd_primes_below(100)) {
        CHECK(w_factor(q, 4) == legendre(-2, q));
        CHECK(w_factor(q, 6) == legendre(-1, q));
        CHECK(w_factor(q, 2) == legendre(-1, q));
        CHECK(w_factor(q, 15) == 1);
        CHECK(w_factor(q, 1) == 1);
        CHECK(w_factor(q, 8) == legendre(2, q));
        CHECK(w_factor(q, 16) == legendre(2, q));
        if (q != 3) CHECK(w_factor(q, 9) == legendre(q, 3));
        if (q != 5) CHECK(w_factor(q, 25) == legendre(q, 5));
        CHECK(w_factor(q, 14) == legendre(-1, q));  // 7 = 3 mod 4
        CHECK(w_factor(q, 18) == legendre(-1, q));
        CHECK(w_factor(q, 10) == 1);                 // 5 = 1 mod 4
        CHECK(w_factor(q, 12) == 1);
    }
}

TEST_CASE("quadratic reciprocity used by the order three row") {
    for (long q : odd_primes_below(1000))
        if (q != 3) CHECK(legendre(q, 3) == legendre(-3, q));
}

TEST_CASE("toric quadratic parity") {
    auto pic = parse_picture("((r r r r)4/9 (r r r r)4/9 (r r r r)4/9 (r r r r)1/2)1/3");
    CHECK(toric_quadratic_parity(pic, *find_action(pic).action) == 0);
    auto odd = parse_picture("(r r r)1/2");
    CHECK(toric_quadratic_parity(odd, *find_action(odd).action) == 0);
    auto mult = parse_picture("((r r)1 r)0");
    CHECK(toric_quadratic_parity(mult, *find_action(mult).action) == 0);
}

TEST_CASE("root numbers of the elliptic representations") {
    for (long q : odd_primes_below(100)) {
        if (q == 3) continue;
        CHECK(root_number(ab_only({{2, 2}}), q, 0).sign == legendre(-1, q));
        CHECK(root_number(ab_only({{4, 1}}), q, 0).sign == legendre(-2, q));
        CHECK(root_number(ab_only({{3, 1}}), q, 0).sign == legendre(q, 3));
        CHECK(root_number(ab_only({{6, 1}}), q, 0).sign == legendre(-1, q));
        CHECK(root_number(ab_only({{1, 2}}), q, 0).sign == 1);
    }
    auto trivial = root_number(InertiaRep{}, 7, 0);
    CHECK(trivial.sign == 1);
    CHECK_FALSE(trivial.ambiguous);
}

TEST_CASE("toric part makes the sign ambiguous") {
    InertiaRep r;
    r.h1_t.add(1, 1);
    auto res = root_number(r, 7, 0);
    CHECK(res.ambiguous);
    auto with_parity = root_number(r, 7, 1);
    CHECK(with_parity.sign == legendre(-1, 7));
}

TEST_CASE("unpaired self-dual characters are an integrity error") {
    CHECK_THROWS_AS(root_number(ab_only({{2, 1}}), 7, 0), IntegrityError);
}

TEST_CASE("json shape") {
    auto j = root_number_to_json(root_number(ab_only({{4, 1}}), 5, 0));
    CHECK(j["sign"] == -1);
    CHECK(j["ambiguous"] == false);
    REQUIRE(j["factors"].size() == 1);
    CHECK(j["factors"][0]["e"] == "4");
}

}
