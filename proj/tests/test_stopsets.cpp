#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "turbobec/stopsets.hpp"

using namespace turbobec;

namespace {

TurboCode toy_code() {
    TurboCodeSpec spec;
    spec.constituent = ConvCodeSpec::rate_half(poly_from_octal("5"), poly_from_octal("7"));
    spec.K = 2;
    spec.interleaver = {3, 5, 1, 4, 0, 2};
    spec.puncture_a = {1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0};
    spec.puncture_b = {1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1};
    return make_turbo_code(spec);
}

TurboCode hamming_code(std::vector<int> perm) {
    TurboCodeSpec spec;
    spec.constituent = ConvCodeSpec::hamming74();
    spec.K = 4;
    spec.interleaver = std::move(perm);
    return make_turbo_code(spec);
}

std::map<int, long> histogram(const std::vector<StoppingSet>& sets) {
    std::map<int, long> h;
    for (const auto& s : sets) ++h[s.size()];
    return h;
}

std::set<std::vector<int>> position_sets(const std::vector<StoppingSet>& sets) {
    std::set<std::vector<int>> out;
    for (const auto& s : sets) out.insert(s.positions);
    return out;
}

std::vector<int> positions_of(const BitVec& v) {
    std::vector<int> out;
    for (auto p : v.set_bits()) out.push_back(static_cast<int>(p));
    return out;
}

}  // namespace

TEST_CASE("maximal supported subcode on the (7,4) Hamming constituent") {
    TurboCode h = hamming_code({0, 1, 2, 3});
    const BinaryMatrix& gen = h.constituent_generator(0);
    REQUIRE(gen.rows() == 4);
    REQUIRE(gen.cols() == 7);

    // all 16 codewords for the exhaustive comparison
    std::vector<BitVec> words;
    for (int m = 0; m < 16; ++m) {
        BitVec msg(4), w(7);
        for (int i = 0; i < 4; ++i) msg.set(i, (m >> i) & 1);
        w = gen.mul_left(msg);
        words.push_back(w);
    }

    SUBCASE("a single codeword support comes back exactly") {
        for (const auto& w : words) {
            if (!w.any()) continue;
            std::vector<int> X;
            for (int p = 0; p < 7; ++p)
                if (w.get(p)) X.push_back(p);
            MaximalSubcode ms = maximal_supported_subcode(gen, X);
            CHECK(ms.dim >= 1);
            CHECK(ms.support == X);
        }
    }
    SUBCASE("empty support") {
        MaximalSubcode ms = maximal_supported_subcode(gen, {});
        CHECK(ms.dim == 0);
        CHECK(ms.support.empty());
    }
    SUBCASE("random index sets agree with the exhaustive codeword scan") {
        for (uint32_t X = 0; X < (1u << 7); ++X) {
            std::vector<int> Xv;
            for (int p = 0; p < 7; ++p)
                if ((X >> p) & 1) Xv.push_back(p);
            MaximalSubcode ms = maximal_supported_subcode(gen, Xv);
            // oracle: every codeword supported within X
            BitVec sup(7);
            int count = 0;
            for (const auto& w : words) {
                bool inside = true;
                for (int p = 0; p < 7 && inside; ++p)
                    if (w.get(p) && !((X >> p) & 1)) inside = false;
                if (inside) {
                    sup |= w;
                    if (w.any()) ++count;
                }
            }
            std::vector<int> want;
            for (int p = 0; p < 7; ++p)
                if (sup.get(p)) want.push_back(p);
            CHECK(ms.support == want);
            CHECK((1 << ms.dim) - 1 == count);
        }
    }
}

TEST_CASE("stopping-set checker basics") {
    TurboCode code = toy_code();
    SUBCASE("the empty set is not a stopping set") {
        CHECK_FALSE(is_turbo_stopping_set(code, {}));
    }
    SUBCASE("every nonzero codeword support is a stopping set") {
        for (int u = 1; u < 4; ++u) {
            BitVec info(2);
            info.set(0, u & 1);
            info.set(1, (u >> 1) & 1);
            BitVec cw = code.encode(info);
            CHECK(is_turbo_stopping_set(code, positions_of(cw)));
        }
    }
    SUBCASE("unions of stopping sets are stopping sets") {
        auto sets = brute_force_stopping_sets(code, code.N);
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                std::set<int> u(sets[i].positions.begin(), sets[i].positions.end());
                u.insert(sets[j].positions.begin(), sets[j].positions.end());
                CHECK(is_turbo_stopping_set(code, {u.begin(), u.end()}));
            }
    }
}

TEST_CASE("brute force reproduces the reference interleaver histograms") {
    SUBCASE("identity interleaver 0123") {
        auto sets = brute_force_stopping_sets(hamming_code({0, 1, 2, 3}), 10);
        std::map<int, long> want{{3, 1}, {4, 3}, {5, 12}, {6, 38}, {7, 67},
                                 {8, 45}, {9, 10}, {10, 1}};
        CHECK(histogram(sets) == want);
    }
    SUBCASE("reversal interleaver 3210") {
        auto sets = brute_force_stopping_sets(hamming_code({3, 2, 1, 0}), 10);
        std::map<int, long> want{{4, 3}, {5, 14}, {6, 38}, {7, 66},
                                 {8, 45}, {9, 10}, {10, 1}};
        CHECK(histogram(sets) == want);
    }
    SUBCASE("tau 0 gives nothing") {
        CHECK(brute_force_stopping_sets(hamming_code({0, 1, 2, 3}), 0).empty());
    }
}

TEST_CASE("minimum stopping set size is at most the minimum distance") {
    for (TurboCode code : {toy_code(), hamming_code({0, 1, 2, 3}), hamming_code({3, 2, 1, 0})}) {
        auto sets = brute_force_stopping_sets(code, code.N);
        REQUIRE(!sets.empty());
        int min_stop = sets.front().size();
        int dmin = code.N;
        for (int u = 1; u < (1 << code.K); ++u) {
            BitVec info(code.K);
            for (int i = 0; i < code.K; ++i) info.set(i, (u >> i) & 1);
            dmin = std::min(dmin, static_cast<int>(code.encode(info).popcount()));
        }
        CHECK(min_stop <= dmin);
    }
}

TEST_CASE("witness decomposition classifies exactly the codeword supports") {
    for (TurboCode code : {toy_code(), hamming_code({0, 1, 2, 3})}) {
        auto sets = brute_force_stopping_sets(code, code.N);
        long codewords = 0;
        for (const auto& s : sets) {
            bool byindicator = is_codeword_support(code, s.positions);
            bool bydecomposition = witness_decomposes(code, s);
            CHECK(byindicator == bydecomposition);
            codewords += byindicator;
        }
        CHECK(codewords == (1 << code.K) - 1);
    }
}

TEST_CASE("tail weight tables") {
    TurboCode code = toy_code();
    const int I = code.I;
    std::vector<uint32_t> all_mask(I, 3);  // both label bits count
    auto w = tail_weight_table(code.ext_module, I, all_mask);
    CHECK(w[I][0] == 0);
    for (std::size_t v = 1; v < w[I].size(); ++v) CHECK(w[I][v] == kInfWeight);

    // oracle: exhaustive minimum over completing paths, per depth and vertex
    auto& ext = code.ext_module;
    std::function<int(int, int)> best = [&](int d, int v) -> int {
        if (d == I) return v == 0 ? 0 : kInfWeight;
        int b = kInfWeight;
        for (const auto& e : ext.sections[d % ext.k]) {
            if (e.left != v) continue;
            int t = best(d + 1, e.right);
            if (t < kInfWeight)
                b = std::min(b, t + std::popcount(e.out & all_mask[d]));
        }
        return b;
    };
    for (int d = 0; d <= I; ++d)
        for (std::size_t v = 0; v < w[d].size(); ++v)
            CHECK(w[d][v] == best(d, static_cast<int>(v)));
}

TEST_CASE("constrained minimum weight") {
    TurboCode code = toy_code();
    const int I = code.I;
    std::vector<uint32_t> parity_mask(I, 2);  // label bit 1 only
    SUBCASE("no constraints equals the unconstrained Viterbi") {
        int w = constrained_min_weight(code.ext_module, I, {}, parity_mask);
        CHECK(w == 0);  // the zero path
    }
    SUBCASE("forcing the all-zero input gives weight zero") {
        std::vector<std::pair<int, int>> cons;
        for (int t = 0; t < I; ++t) cons.emplace_back(t, 0);
        CHECK(constrained_min_weight(code.ext_module, I, cons, parity_mask) == 0);
    }
    SUBCASE("random scattered constraints agree with exhaustive path scan") {
        auto& ext = code.ext_module;
        for (uint32_t cmask = 0; cmask < (1u << I); cmask += 3) {
            std::vector<std::pair<int, int>> cons;
            for (int t = 0; t < I; ++t)
                if ((cmask >> t) & 1) cons.emplace_back(t, (cmask >> ((t + 3) % I)) & 1);
            std::function<int(int, int)> best = [&](int d, int v) -> int {
                if (d == I) return v == 0 ? 0 : kInfWeight;
                int want = -1;
                for (auto [t, bit] : cons)
                    if (t == d) want = bit;
                int b = kInfWeight;
                for (const auto& e : ext.sections[d % ext.k]) {
                    if (e.left != v) continue;
                    if (want >= 0 && static_cast<int>(e.in) != want) continue;
                    int tl = best(d + 1, e.right);
                    if (tl < kInfWeight)
                        b = std::min(b, tl + std::popcount(e.out & parity_mask[d]));
                }
                return b;
            };
            CHECK(constrained_min_weight(ext, I, cons, parity_mask) == best(0, 0));
        }
    }
}

TEST_CASE("GPB enumeration is sound and complete") {
    SUBCASE("toy code, every tau") {
        TurboCode code = toy_code();
        auto all = brute_force_stopping_sets(code, code.N);
        for (int tau = 0; tau <= code.N; ++tau) {
            std::vector<StoppingSet> want;
            for (const auto& s : all)
                if (s.size() <= tau) want.push_back(s);
            GpbResult got = gpb_enumerate(code, tau);
            CHECK(got.exact);
            CHECK(position_sets(got.sets) == position_sets(want));
        }
    }
    SUBCASE("Hamming PCCCs match brute force and the paper histograms") {
        for (auto perm : {std::vector<int>{0, 1, 2, 3}, std::vector<int>{3, 2, 1, 0}}) {
            TurboCode code = hamming_code(perm);
            GpbResult got = gpb_enumerate(code, code.N);
            auto want = brute_force_stopping_sets(code, code.N);
            CHECK(position_sets(got.sets) == position_sets(want));
            CHECK(histogram(got.sets) == histogram(want));
        }
    }
    SUBCASE("the cheap bound explores more but finds the same sets") {
        TurboCode code = toy_code();
        GpbResult tight = gpb_enumerate(code, code.N);
        GpbResult cheap = gpb_enumerate(code, code.N, std::nullopt, true);
        CHECK(position_sets(cheap.sets) == position_sets(tight.sets));
        CHECK(cheap.nodes_expanded >= tight.nodes_expanded);
    }
    SUBCASE("tau below the minimum size is empty") {
        TurboCode code = toy_code();
        auto all = brute_force_stopping_sets(code, code.N);
        REQUIRE(!all.empty());
        CHECK(gpb_enumerate(code, all.front().size() - 1).sets.empty());
    }
    SUBCASE("witnesses are the maximal subcode supports") {
        TurboCode code = toy_code();
        for (const auto& s : gpb_enumerate(code, code.N).sets) {
            CHECK(is_turbo_stopping_set(code, s.positions));
            MaximalSubcode ma =
                maximal_supported_subcode(code.constituent_generator(0), s.witness_a);
            CHECK(ma.support == s.witness_a);
        }
    }
}

TEST_CASE("pruned enumeration is a flagged, sound subset") {
    TurboCode code = toy_code();
    GpbResult pruned = gpb_enumerate(code, code.N, 2);
    CHECK_FALSE(pruned.exact);
    auto all = position_sets(brute_force_stopping_sets(code, code.N));
    for (const auto& s : pruned.sets) CHECK(all.count(s.positions) == 1);
    // alpha = 2 keeps single-codeword structure, so codeword supports survive
    for (int u = 1; u < 4; ++u) {
        BitVec info(2);
        info.set(0, u & 1);
        info.set(1, (u >> 1) & 1);
        CHECK(position_sets(pruned.sets).count(positions_of(code.encode(info))) == 1);
    }
}

TEST_CASE("stopset report golden file") {
    TurboCode code = toy_code();
    auto res = gpb_enumerate(code, 6);
    std::ostringstream os;
    write_stopset_report(os, code, res.sets, 6, res.exact);
    std::ifstream gold(std::string(TURBOBEC_DATA_DIR) + "/stopset_report_toy.txt");
    REQUIRE(gold.good());
    std::stringstream want;
    want << gold.rdbuf();
    CHECK(os.str() == want.str());
}
