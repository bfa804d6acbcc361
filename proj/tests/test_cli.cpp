#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "turbobec/cli.hpp"

using namespace turbobec;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TURBOBEC_DATA_DIR) + "/" + name; }

const std::vector<std::string> kToyCode = {"--code", data("toy_code.spec"), "--interleaver",
                                           data("toy.interleaver")};

std::vector<std::string> with_toy(std::vector<std::string> args) {
    args.insert(args.end(), kToyCode.begin(), kToyCode.end());
    return args;
}

}  // namespace

TEST_CASE("usage errors exit 1, unknown subcommands print usage") {
    Run r = cli({"frobnicate"});
    CHECK(r.code == 1);
    CHECK(r.err.find("turbo") != std::string::npos);
    CHECK(cli({}).code == 1);
    CHECK(cli({"encode"}).code == 1);  // missing required options
}

TEST_CASE("encode matches the frozen toy codeword; data errors exit 2") {
    Run r = cli(with_toy({"encode", "--info", "10"}));
    REQUIRE(r.code == 0);
    CHECK(r.out == "110010011101\n");
    CHECK(cli(with_toy({"encode", "--info", "1x"})).code == 2);
    CHECK(cli({"encode", "--info", "10", "--code", "/nonexistent", "--interleaver",
               data("toy.interleaver")})
              .code == 2);
}

TEST_CASE("decode round trip") {
    Run r = cli(with_toy({"decode", "--received", "1100100111e1", "--decoder", "basic"}));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("status recovered") != std::string::npos);
    CHECK(r.out.find("estimate 110010011101") != std::string::npos);

    // erase a full codeword support: improved decoding reports the ambiguity
    Run amb = cli(with_toy({"decode", "--received", "11e01ee11ee1"}));
    REQUIRE(amb.code == 0);
    CHECK(amb.out.find("status ambiguous") != std::string::npos);
}

TEST_CASE("check-stopset wording") {
    Run cw = cli(with_toy({"check-stopset", "--positions", "2,5,6,9,10"}));
    REQUIRE(cw.code == 0);
    CHECK(cw.out == "stopping set: yes (codeword)\n");
    Run no = cli(with_toy({"check-stopset", "--positions", "0,1"}));
    CHECK(no.out == "stopping set: no\n");
    Run yes = cli(with_toy({"check-stopset", "--positions", "0,1,5,6,8,10"}));
    CHECK(yes.out == "stopping set: yes\n");
}

TEST_CASE("enumerate: tau 0 gives an empty report, exit 0") {
    Run r = cli(with_toy({"enumerate", "--tau", "0"}));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("count 0") != std::string::npos);
    CHECK(r.out.find("stopset-report v1") == 0);
}

TEST_CASE("enumerate agrees between search and brute force") {
    Run a = cli(with_toy({"enumerate", "--tau", "12"}));
    Run b = cli(with_toy({"enumerate", "--tau", "12", "--brute-force"}));
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("uniform prints the Hamming reference polynomials") {
    Run r = cli({"uniform", "--constituent", "hamming74", "--interleaver-length", "4"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("TSSEF S(X) = 1/4*X^3 + 3*X^4 + 27/2*X^5 + 38*X^6 + 265/4*X^7 + "
                     "45*X^8 + 10*X^9 + X^10\n") != std::string::npos);
    CHECK(r.out.find("WEF(X) = 1 + 1/4*X^3 + 3*X^4 + 15/2*X^5 + 3*X^6 + 1/4*X^7 + X^10\n") !=
          std::string::npos);
    CHECK(r.out.find("SIRSEF A(W,Z) = W*(3*Z^2 + Z^3) + W^2*(3*Z + 3*Z^2 + 6*Z^3) + "
                     "W^3*(1 + 3*Z + 12*Z^2 + 4*Z^3) + W^4*(3*Z + 3*Z^2 + Z^3)\n") !=
          std::string::npos);
}

TEST_CASE("simulate: degenerate grid points and reproducibility") {
    Run r = cli(with_toy({"simulate", "--epsilon", "0,1", "--frames", "50", "--seed", "9"}));
    REQUIRE(r.code == 0);
    std::istringstream csv(r.out);
    std::string header, row0, row1;
    std::getline(csv, header);
    CHECK(header == "epsilon,frames,frame_errors,fer,mean_iterations,ambiguous,stderr");
    std::getline(csv, row0);
    std::getline(csv, row1);
    CHECK(row0 == "0,50,0,0,1,0,0");       // epsilon 0: no errors, one iteration
    CHECK(row1.rfind("1,50,50,1,", 0) == 0);  // epsilon 1: everything ambiguous

    // schema round trip: seven numeric fields per row
    {
        double eps, fer, mean, se;
        long fr, errs, amb;
        REQUIRE(std::sscanf(row1.c_str(), "%lf,%ld,%ld,%lf,%lf,%ld,%lf", &eps, &fr, &errs, &fer,
                            &mean, &amb, &se) == 7);
        CHECK(eps == 1.0);
        CHECK(fr == 50);
        CHECK(errs == 50);
        CHECK(fer == 1.0);
        CHECK(amb == 50);
        CHECK(se == 0.0);
    }

    Run again = cli(with_toy({"simulate", "--epsilon", "0,1", "--frames", "50", "--seed", "9"}));
    CHECK(again.out == r.out);
    Run threaded = cli(with_toy({"simulate", "--epsilon", "0,1", "--frames", "50", "--seed", "9",
                                 "--threads", "4"}));
    CHECK(threaded.out == r.out);  // thread count never changes the counts
}

TEST_CASE("make-interleaver emits a valid permutation file") {
    Run r = cli({"make-interleaver", "--length", "8", "--type", "random", "--seed", "3"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::vector<char> seen(8, 0);
    int v, n = 0;
    while (is >> v) {
        REQUIRE(v >= 0);
        REQUIRE(v < 8);
        seen[v] = 1;
        ++n;
    }
    CHECK(n == 8);
    for (char c : seen) CHECK(c == 1);
}

TEST_CASE("the installed binary wires up to the same front end") {
    std::string cmd = std::string(TURBOBEC_CLI_PATH) + " encode --info 10 --code " +
                      data("toy_code.spec") + " --interleaver " + data("toy.interleaver");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[64] = {0};
    REQUIRE(fgets(buf, sizeof buf, p) != nullptr);
    CHECK(std::string(buf) == "110010011101\n");
    CHECK(pclose(p) == 0);
}
