#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cpic/cli.hpp"

using namespace cpic;

namespace {
const std::string kSection5 = "((r r r r)4/9 (r r r r)4/9 (r r r r)4/9 (r r r r)1/2)1/3";

struct Result {
    int code;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}
}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate") {
    auto ok = call({"validate", "(r r r)1/2"});
    CHECK(ok.code == exit_ok);
    CHECK(ok.json()["leaves"] == 3);
    auto bad = call({"validate", "((r r)1/2 r"});
    CHECK(bad.code == exit_rejected);
    CHECK(bad.err.find("position 11") != std::string::npos);
    auto axiom = call({"validate", "((r r)1/4 r)1/2"});
    CHECK(axiom.code == exit_rejected);
}

TEST_CASE("picture from a file or JSON") {
    std::string path = "cpic_cli_test_picture.txt";
    {
        std::ofstream f(path);
        f << kSection5 << "\n";
    }
    auto r = call({"validate", "--file", path, "--format", "text"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("16 leaves") != std::string::npos);
    std::remove(path.c_str());
    auto j = call({"validate", R"({"leaves": 3, "clusters": [{"members": [1,2,3], "depth": "1/2"}]})"});
    CHECK(j.code == exit_ok);
    CHECK(call({"validate"}).code == exit_usage);
    CHECK(call({"validate", "(r r r)1", "--file", "x"}).code == exit_usage);
}

TEST_CASE("usage errors") {
    CHECK(call({}).code == exit_usage);
    CHECK(call({"frobnicate"}).code == exit_usage);
    CHECK(call({"construct", kSection5}).code == exit_usage);
    CHECK(call({"kodaira", "(r r r)1/2", "--q", "x"}).code == exit_usage);
    CHECK(call({"validate", "(r r r)1", "--format", "xml"}).code == exit_usage);
    CHECK(call({"gen2-tables", "--roots", "7"}).code == exit_usage);
    auto help = call({"--help"});
    CHECK(help.code == exit_ok);
    CHECK(help.out.find("gen2-tables") != std::string::npos);
}

TEST_CASE("analyze") {
    auto r = call({"analyze", kSection5});
    REQUIRE(r.code == exit_ok);
    auto j = r.json();
    CHECK(j["order"] == "18");
    CHECK(j["orphans"].size() == 4);
    CHECK(j["round_trip"] == true);
    CHECK(j["check"]["hypothesis_h"] == true);
    CHECK(j["leaves"][0]["stab_index"] == "9");
    CHECK(j["leaves"][3]["stab_index"] == "3");
    CHECK(j["leaves"][12]["stab_index"] == "2");
    // re-parse the printed picture and analyze again: identical output
    auto again = call({"analyze", j["picture"].get<std::string>()});
    CHECK(again.out == r.out);
}

TEST_CASE("domain rejections") {
    CHECK(call({"analyze", "((r r r r)5/4 (r r)3/2)1/2"}).code == exit_rejected);
    CHECK(call({"analyze", kSection5, "--p", "3"}).code == exit_rejected);
    CHECK(call({"repn", "(r r r)1/2", "--p", "2"}).code == exit_rejected);
    CHECK(call({"construct", kSection5, "--p", "21"}).code == exit_rejected);
    CHECK(call({"kodaira", "(r r r)1/2", "--q", "3"}).code == exit_rejected);
    CHECK(call({"rootnumber", "(r r r)1/2", "--q", "2"}).code == exit_rejected);
}

TEST_CASE("repn") {
    auto r = call({"repn", kSection5});
    REQUIRE(r.code == exit_ok);
    auto j = r.json();
    CHECK(j["h1_ab"]["rho"] == nlohmann::json{{"2", "2"}, {"9", "1"}});
    CHECK(j["h1_t"]["rho"] == nlohmann::json{{"1", "1"}, {"3", "1"}});
    CHECK(j["sp2_factor"] == true);
    CHECK(j["clusters"].size() == 2);
}

TEST_CASE("construct") {
    auto r = call({"construct", kSection5, "--p", "19"});
    REQUIRE(r.code == exit_ok);
    auto j = r.json();
    CHECK(j["degree"] == 16);
    CHECK(j["round_trip"] == true);
    CHECK(j["recovered"] == kSection5);
}

TEST_CASE("denoms, kodaira, rootnumber") {
    auto d = call({"denoms", "(((r r r)4/3 (r r r)4/3)3/4 ((r r r)4/3 (r r r)4/3)3/4)1/2", "--format", "text"});
    CHECK(d.code == exit_ok);
    CHECK(d.out == "R {2} actual 2\ns1 {4} actual 4\ns2 {3,6,12} actual 3\n");
    auto k = call({"kodaira", "(r r r)1/2", "--q", "5"});
    CHECK(k.json()["kodaira"] == "III");
    auto e = call({"elliptic", "classify", "((r r)3 r)0", "--q", "7"});
    CHECK(e.json()["kodaira"] == "I6");
    auto w = call({"rootnumber", "(r r r)1/2", "--q", "5"});
    CHECK(w.json()["sign"] == -1);
}

TEST_CASE("json output is deterministic") {
    auto a = call({"repn", kSection5});
    auto b = call({"repn", kSection5});
    CHECK(a.out == b.out);
    auto s1 = call({"selftest", "--count", "20", "--seed", "3"});
    auto s2 = call({"selftest", "--count", "20", "--seed", "3"});
    CHECK(s1.code == exit_ok);
    CHECK(s1.out == s2.out);
}

TEST_CASE("gen2-tables") {
    auto r = call({"gen2-tables", "--roots", "5"});
    REQUIRE(r.code == exit_ok);
    CHECK(r.json()["tuple_count"] == 55);
    auto check = call({"gen2-tables", "--roots", "5", "--check"});
    CHECK(check.code == exit_ok);
    CHECK(check.json()["match"] == true);
}

}
