// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code; all comparisons of
// enumerating functions are exact rational equality.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "turbobec/decode.hpp"
#include "turbobec/sim.hpp"
#include "turbobec/stopsets.hpp"
#include "turbobec/uniform.hpp"

using namespace turbobec;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, double seconds) {
    std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run(int criterion, const std::string& what, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = body();
    } catch (const std::exception& e) {
        std::printf("  exception: %s\n", e.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(criterion, pass, what, dt);
}

EnumFn fn(std::initializer_list<std::tuple<int, int, Rat>> terms) {
    EnumFn f;
    for (auto& [w, z, c] : terms) f.add_term(w, z, c);
    return f;
}

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

ReceivedWord erase_pattern(const BitVec& cw, uint32_t mask) {
    ReceivedWord r;
    r.symbols.resize(cw.size());
    for (std::size_t p = 0; p < cw.size(); ++p)
        r.symbols[p] = (mask >> p) & 1 ? Sym::Erased : sym_of_bit(cw.get(p));
    return r;
}

// reference Hamming-constituent values
const EnumFn kSirsef = fn({{1, 2, 3}, {1, 3, 1},
                           {2, 1, 3}, {2, 2, 3}, {2, 3, 6},
                           {3, 0, 1}, {3, 1, 3}, {3, 2, 12}, {3, 3, 4},
                           {4, 1, 3}, {4, 2, 3}, {4, 3, 1}});
const EnumFn kIrtssef = fn({{1, 4, Rat(9, 4)}, {1, 5, Rat(3, 2)}, {1, 6, Rat(1, 4)},
                            {2, 2, Rat(3, 2)}, {2, 3, 3}, {2, 4, Rat(15, 2)}, {2, 5, 6},
                            {2, 6, 6},
                            {3, 0, Rat(1, 4)}, {3, 1, Rat(3, 2)}, {3, 2, Rat(33, 4)},
                            {3, 3, 20}, {3, 4, 42}, {3, 5, 24}, {3, 6, 4},
                            {4, 2, 9}, {4, 3, 18}, {4, 4, 15}, {4, 5, 6}, {4, 6, 1}});
const EnumFn kTssef = fn({{3, 0, Rat(1, 4)}, {4, 0, 3}, {5, 0, Rat(27, 2)}, {6, 0, 38},
                          {7, 0, Rat(265, 4)}, {8, 0, 45}, {9, 0, 10}, {10, 0, 1}});
const EnumFn kWef = fn({{0, 0, 1}, {3, 0, Rat(1, 4)}, {4, 0, 3}, {5, 0, Rat(15, 2)},
                        {6, 0, 3}, {7, 0, Rat(1, 4)}, {10, 0, 1}});
const EnumFn kClassBig = fn({{1, 4, 2}, {1, 5, 2},
                             {2, 2, 1}, {2, 3, 4}, {2, 4, 7}, {2, 5, 6}, {2, 6, 6},
                             {3, 1, 2}, {3, 2, 8}, {3, 3, 20}, {3, 4, 42}, {3, 5, 24},
                             {3, 6, 4},
                             {4, 2, 9}, {4, 3, 18}, {4, 4, 15}, {4, 5, 6}, {4, 6, 1}});
const EnumFn kClassSmall = fn({{1, 4, 3}, {1, 6, 1},
                               {2, 2, 3}, {2, 4, 9}, {2, 5, 6}, {2, 6, 6},
                               {3, 0, 1}, {3, 2, 9}, {3, 3, 20}, {3, 4, 42}, {3, 5, 24},
                               {3, 6, 4},
                               {4, 2, 9}, {4, 3, 18}, {4, 4, 15}, {4, 5, 6}, {4, 6, 1}});

bool criterion1() {
    ConstituentCode hamming = terminated_constituent(ConvCodeSpec::hamming74(), 4);
    EnumFn A = sirsef_block(hamming);
    EnumFn S = irtssef_uniform(A, A, 4);
    EnumFn A1 = sirsef_block(hamming, SubcodeMode::DimensionOne);
    EnumFn W = tssef(irtssef_uniform(A1, A1, 4), TssefMode::Codeword);
    return A == kSirsef && S == kIrtssef && tssef(S) == kTssef && W == kWef;
}

bool criterion2() {
    InterleaverAverage avg = interleaver_average_oracle(ConvCodeSpec::hamming74(), 4);
    if (avg.classes.size() != 2) return false;
    const InterleaverClass* big = &avg.classes[0];
    const InterleaverClass* small = &avg.classes[1];
    if (big->perms.size() < small->perms.size()) std::swap(big, small);
    return big->perms.size() == 18 && small->perms.size() == 6 &&
           big->irtssef == kClassBig && small->irtssef == kClassSmall &&
           avg.average == kIrtssef;
}

bool criterion3() {
    struct Row {
        const char *h1, *h2;
        long mu, phi, xmu, xphi;
    };
    // basic and extended complexities for (2,1,nu), nu = 2..6
    const Row rows[] = {
        {"5", "7", 4, 8, 5, 16},        {"13", "15", 8, 16, 16, 67},
        {"27", "31", 16, 32, 67, 374},  {"45", "75", 32, 64, 374, 2825},
        {"103", "177", 64, 128, 2825, 29212},
    };
    bool ok = true;
    for (const Row& r : rows) {
        auto spec = ConvCodeSpec::rate_half(poly_from_octal(r.h1), poly_from_octal(r.h2));
        auto info = sectionalize_info(build_minimal_module(spec));
        auto [mu, phi] = module_complexity(info);
        auto [xmu, xphi] = module_complexity(build_extended_module(info));
        bool row_ok = mu == r.mu && phi == r.phi && xmu == r.xmu && xphi == r.xphi;
        if (!row_ok)
            std::printf("  nu=%d: got (%s,%s,%s,%s)\n", poly_degree(poly_from_octal(r.h1)),
                        mu.get_str().c_str(), phi.get_str().c_str(), xmu.get_str().c_str(),
                        xphi.get_str().c_str());
        ok = ok && row_ok;
    }
    return ok;
}

std::vector<uint32_t> stopset_masks(const TurboCode& code) {
    std::vector<uint32_t> masks;
    for (const auto& s : brute_force_stopping_sets(code, code.N)) {
        uint32_t m = 0;
        for (int p : s.positions) m |= uint32_t{1} << p;
        masks.push_back(m);
    }
    return masks;
}

bool criterion4() {
    TurboCode code = toy_code();
    auto masks = stopset_masks(code);
    BitVec info(2);
    info.set(0, true);
    BitVec cw = code.encode(info);
    for (uint32_t pattern = 0; pattern < (1u << 12); ++pattern) {
        uint32_t maxstop = 0;
        for (uint32_t m : masks)
            if ((m & pattern) == m) maxstop |= m;
        DecodeOutcome out = turbo_decode(erase_pattern(cw, pattern), code, 1000);
        uint32_t rm = 0;
        for (int p : out.residual) rm |= uint32_t{1} << p;
        bool ok = maxstop == 0 ? (out.status == DecodeStatus::Recovered && rm == 0)
                               : (out.status == DecodeStatus::Stalled && rm == maxstop);
        if (!ok) {
            std::printf("  pattern %03x fails (maxstop %03x, residual %03x)\n", pattern,
                        maxstop, rm);
            return false;
        }
    }
    return true;
}

bool criterion5() {
    TurboCode code = toy_code();
    BitVec info(2);
    info.set(0, true);
    BitVec cw = code.encode(info);
    for (uint32_t pattern = 0; pattern < (1u << 12); ++pattern) {
        ReceivedWord r = erase_pattern(cw, pattern);
        DecodeOutcome ml = ml_decode_oracle(r, code);
        DecodeOutcome imp = improved_decode(r, code);  // unbounded budget
        if (imp.status != ml.status) return false;
        if (imp.status == DecodeStatus::Recovered)
            for (int p = 0; p < code.N; ++p)
                if (imp.estimate[p] != ml.estimate[p]) return false;
        for (int p = 0; p < code.N; ++p)
            if (imp.estimate[p] != Sym::Erased && imp.estimate[p] != sym_of_bit(cw.get(p)))
                return false;  // a wrong bit was emitted
    }
    return true;
}

bool criterion6() {
    std::vector<TurboCode> codes;
    codes.push_back(toy_code());
    codes.push_back(hamming_code({0, 1, 2, 3}));
    codes.push_back(hamming_code({3, 2, 1, 0}));
    for (const TurboCode& code : codes) {
        auto all = brute_force_stopping_sets(code, code.N);
        for (int tau = 0; tau <= code.N; ++tau) {
            std::set<std::vector<int>> want;
            for (const auto& s : all)
                if (s.size() <= tau) want.insert(s.positions);
            GpbResult got = gpb_enumerate(code, tau);
            std::set<std::vector<int>> gotset;
            for (const auto& s : got.sets) gotset.insert(s.positions);
            if (gotset != want) return false;
        }
    }
    // size histograms against the published table polynomials
    auto hist = [](const std::vector<StoppingSet>& sets) {
        std::map<int, long> h;
        for (const auto& s : sets) ++h[s.size()];
        return h;
    };
    std::map<int, long> identity{{3, 1}, {4, 3}, {5, 12}, {6, 38},
                                 {7, 67}, {8, 45}, {9, 10}, {10, 1}};
    std::map<int, long> reversal{{4, 3}, {5, 14}, {6, 38}, {7, 66},
                                 {8, 45}, {9, 10}, {10, 1}};
    return hist(gpb_enumerate(codes[1], 10).sets) == identity &&
           hist(gpb_enumerate(codes[2], 10).sets) == reversal;
}

bool criterion7() {
    TurboCode code = toy_code();
    BitVec zero(code.N);
    auto sets = brute_force_stopping_sets(code, code.N);

    // Lemma 1: nonzero codeword supports are stopping sets; min size <= dmin
    int dmin = code.N;
    for (int u = 1; u < (1 << code.K); ++u) {
        BitVec info(code.K);
        for (int i = 0; i < code.K; ++i) info.set(i, (u >> i) & 1);
        BitVec cw = code.encode(info);
        std::vector<int> sup;
        for (int p = 0; p < code.N; ++p)
            if (cw.get(p)) sup.push_back(p);
        dmin = std::min(dmin, static_cast<int>(sup.size()));
        if (!is_turbo_stopping_set(code, sup)) return false;
    }
    if (sets.empty() || sets.front().size() > dmin) return false;

    // Lemma 2: witness decomposition classifies exactly the codeword supports
    for (const auto& s : sets)
        if (witness_decomposes(code, s) != is_codeword_support(code, s.positions)) return false;

    // selected position is an erasure, on every stopping-set stall
    for (const auto& s : sets) {
        uint32_t m = 0;
        for (int p : s.positions) m |= uint32_t{1} << p;
        DecoderState st = make_decoder_state(code, erase_pattern(zero, m));
        if (run_decoder(st, 1000) != StepResult::Stalled) return false;
        int v = select_bit_position(st, code);
        if (st.est[code.sys_turbo_pos[v]] != Sym::Erased) return false;
    }

    // guess-value independence over all positions of all stopping sets
    for (const auto& s : sets) {
        uint32_t m = 0;
        for (int p : s.positions) m |= uint32_t{1} << p;
        for (int j : s.positions) {
            std::array<std::optional<std::vector<int>>, 2> residuals;
            for (int val = 0; val < 2; ++val) {
                ReceivedWord r = erase_pattern(zero, m);
                r[j] = val ? Sym::One : Sym::Zero;
                DecoderState st = make_decoder_state(code, r);
                if (run_decoder(st, 1000) == StepResult::Inconsistent) continue;
                residuals[val] = st.est.erased_positions();
            }
            if (residuals[0] && residuals[1] && *residuals[0] != *residuals[1]) return false;
        }
    }

    // guess-position independence: both value branches select the same next
    // position whenever neither reaches an inconsistency
    for (uint32_t pattern = 0; pattern < (1u << 12); ++pattern) {
        DecoderState st = make_decoder_state(code, erase_pattern(zero, pattern));
        if (run_decoder(st, 1000) != StepResult::Stalled) continue;
        int v = select_bit_position(st, code);
        std::array<std::optional<int>, 2> next;
        for (int val = 0; val < 2; ++val) {
            ReceivedWord r = st.est;
            r[code.sys_turbo_pos[v]] = val ? Sym::One : Sym::Zero;
            DecoderState bst = make_decoder_state(code, r);
            if (run_decoder(bst, 1000) != StepResult::Stalled) continue;
            next[val] = select_bit_position(bst, code);
        }
        if (next[0] && next[1] && *next[0] != *next[1]) return false;
    }
    return true;
}

bool criterion8() {
    TurboCode code = toy_code();
    SimConfig cfg;
    cfg.epsilons = {0.2, 0.4, 0.6};
    cfg.frames = 100000;
    cfg.seed = 20250810;
    cfg.threads = 4;

    cfg.decoder = DecoderKind::Basic;
    cfg.l_max = 1000;
    auto basic = simulate_fer(code, cfg);
    cfg.decoder = DecoderKind::Improved;
    cfg.l_max = 100000;  // large budget
    auto improved = simulate_fer(code, cfg);
    cfg.decoder = DecoderKind::MlOracle;
    auto ml = simulate_fer(code, cfg);

    bool ok = true;
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
        double two_se = 2.0 * std::max(improved[i].stderr_fer, ml[i].stderr_fer);
        bool ordered = improved[i].fer <= basic[i].fer;
        bool near_ml = std::abs(improved[i].fer - ml[i].fer) <= two_se;
        std::printf("  eps=%.1f: FER basic=%.5f improved=%.5f ml=%.5f E[T]=%.3f\n",
                    cfg.epsilons[i], basic[i].fer, improved[i].fer, ml[i].fer,
                    improved[i].mean_iterations);
        ok = ok && ordered && near_ml;
    }
    return ok;
}

}  // namespace

int main() {
    run(1, "Hamming uniform-interleaver suite (exact rational equality)", criterion1);
    run(2, "24-interleaver table: two classes (18 + 6), exact average", criterion2);
    run(3, "trellis complexity table, nu = 2..6, basic and extended", criterion3);
    run(4, "stalls leave exactly the maximal contained stopping set, all 2^12 patterns",
        criterion4);
    run(5, "improved decoding == ML oracle over all 2^12 patterns", criterion5);
    run(6, "GPB enumeration == brute force, all tau; reference histograms", criterion6);
    run(7, "stopping-set properties: codeword supports, classifier, guess independence",
        criterion7);
    run(8, "FER ordering and ML agreement at eps in {0.2, 0.4, 0.6}", criterion8);
    std::printf(
        "[N/A ] criterion 9: reference results for the (155,64,18), (201,64,21), (828,270,36) "
        "and (3600,1194,49) codes depend on dithered-relative-prime interleavers and puncturing "
        "patterns that were never distributed, so they cannot be rebuilt here; criteria 4-8 "
        "cover the same claims with exhaustive and oracle-based checks instead.\n");
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
